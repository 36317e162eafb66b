//! Normal ordering of arbitrary letter sequences.

use super::element::NOElement;
use super::word::{Generator, Kind, NOWord};
use crate::rational::Rational;

/// The normal-ordering symbol `:g_1 ... g_r:`: letters are sorted with the
/// supercommutative sign and contractions are dropped.
pub fn normal_order_symbol(letters: &[Generator]) -> NOElement {
    match NOWord::from_letters(letters) {
        Some((sign, w)) => NOElement::from_word(w, Rational::from_int(sign)),
        None => NOElement::zero(),
    }
}

/// Which adjacent out-of-order pair the reference rewriter swaps first.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Scan {
    LeftFirst,
    RightFirst,
}

/// Reference normal ordering by adjacent transpositions using only the
/// defining relations. Independent of the product in [`NOElement`].
pub fn rewrite(letters: &[Generator], scan: Scan) -> NOElement {
    let mut out: Vec<(NOWord, Rational)> = Vec::new();
    let mut stack: Vec<(Vec<Generator>, Rational)> = vec![(letters.to_vec(), Rational::ONE)];
    while let Some((seq, c)) = stack.pop() {
        let mut bad = (0..seq.len().saturating_sub(1)).filter(|&p| {
            let (a, b) = (seq[p], seq[p + 1]);
            a > b || (a == b && a.site.odd)
        });
        let pos = match scan {
            Scan::LeftFirst => bad.next(),
            Scan::RightFirst => bad.last(),
        };
        let Some(p) = pos else {
            let (_, w) = NOWord::from_letters(&seq).expect("sorted sequence");
            out.push((w, c));
            continue;
        };
        let (a, b) = (seq[p], seq[p + 1]);
        if a == b {
            continue;
        }
        let sign = a.parity().koszul(b.parity());
        let mut swapped = seq.clone();
        swapped.swap(p, p + 1);
        stack.push((swapped, &c * &Rational::from_int(sign)));
        if a.kind == Kind::D && b.kind == Kind::X && a.site == b.site {
            let mut contracted = seq;
            contracted.drain(p..p + 2);
            stack.push((contracted, c));
        }
    }
    NOElement::from_terms(out)
}
