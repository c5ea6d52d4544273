//! Canonical forms up to isomorphism.
//!
//! The form is the lexicographically least encoding over all orderings of
//! the universe. The encoding is laid out block by block (block `k` only
//! depends on the first `k + 1` positions), so a branch whose prefix already
//! exceeds the best known encoding is cut without changing the result.

use alloc::string::String;
use alloc::vec::Vec;

use crate::relation::{bit, Relation};
use crate::{Error, Label, Structure};

/// Largest universe accepted by [`canonical_form`].
pub const CANONICAL_BOUND: usize = 8;

/// Isomorphism-invariant encoding of a structure.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

fn header(s: &Structure) -> Vec<u8> {
    let mut h = Vec::new();
    h.push(s.len() as u8);
    h.push(s.ops().len() as u8);
    for name in s.ops().keys() {
        h.extend_from_slice(name.as_bytes());
        h.push(0);
    }
    h
}

#[inline]
fn block(leq: &Relation, ll: &Relation, perm: &[usize], e: usize, out: &mut Vec<u8>) {
    for &p in perm {
        out.push(
            (leq.contains(e, p) as u8)
                | (leq.contains(p, e) as u8) << 1
                | (ll.contains(e, p) as u8) << 2
                | (ll.contains(p, e) as u8) << 3,
        );
    }
    out.push((leq.contains(e, e) as u8) | (ll.contains(e, e) as u8) << 1);
}

fn ops_tail(s: &Structure, perm: &[usize], out: &mut Vec<u8>) {
    let mut pos = [0u8; 64];
    for (i, &p) in perm.iter().enumerate() {
        pos[p] = i as u8;
    }
    for table in s.ops().values() {
        for &p in perm {
            out.push(pos[table[p]]);
        }
    }
}

struct Search<'a> {
    s: &'a Structure,
    perm: Vec<usize>,
    cur: Vec<u8>,
    best: Option<(Vec<u8>, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self, used: u64) {
        let n = self.s.len();
        if self.perm.len() == n {
            let mark = self.cur.len();
            ops_tail(self.s, &self.perm, &mut self.cur);
            let better = match &self.best {
                None => true,
                Some((b, _)) => self.cur < *b,
            };
            if better {
                self.best = Some((self.cur.clone(), self.perm.clone()));
            }
            self.cur.truncate(mark);
            return;
        }
        for e in 0..n {
            if used & bit(e) != 0 {
                continue;
            }
            let mark = self.cur.len();
            block(self.s.leq(), self.s.ll(), &self.perm, e, &mut self.cur);
            let worse = match &self.best {
                Some((b, _)) => self.cur.as_slice() > &b[..self.cur.len()],
                None => false,
            };
            if !worse {
                self.perm.push(e);
                self.run(used | bit(e));
                self.perm.pop();
            }
            self.cur.truncate(mark);
        }
    }
}

/// Canonical ordering of the universe: `order[i]` is the element placed at position `i`.
pub fn canonical_order(s: &Structure) -> Result<(CanonicalForm, Vec<usize>), Error> {
    if s.len() > CANONICAL_BOUND {
        return Err(Error::SizeBoundExceeded(s.len(), CANONICAL_BOUND));
    }
    let mut search = Search { s, perm: Vec::with_capacity(s.len()), cur: Vec::new(), best: None };
    search.run(0);
    let (body, perm) = search.best.expect("at least one ordering");
    let mut enc = header(s);
    enc.extend_from_slice(&body);
    Ok((CanonicalForm(enc), perm))
}

pub fn canonical_form(s: &Structure) -> Result<CanonicalForm, Error> {
    canonical_order(s).map(|(f, _)| f)
}

/// Label for canonical position `i`: `e1`, `e2`, …
pub fn canonical_label(i: usize) -> Label {
    let mut s = String::from("e");
    let mut digits = [0u8; 20];
    let mut k = i + 1;
    let mut len = 0;
    while k > 0 {
        digits[len] = b'0' + (k % 10) as u8;
        k /= 10;
        len += 1;
    }
    for d in digits[..len].iter().rev() {
        s.push(*d as char);
    }
    Label::new(&s).expect("valid label")
}

/// The canonical representative: elements renamed `e1..en` in canonical order.
pub fn canonical_structure(s: &Structure) -> Result<(CanonicalForm, Structure), Error> {
    let (form, perm) = canonical_order(s)?;
    let mut pos = alloc::vec![0; s.len()];
    for (i, &p) in perm.iter().enumerate() {
        pos[p] = i;
    }
    let out = s.relabel(|i, _| canonical_label(pos[i]))?;
    Ok((form, out))
}
