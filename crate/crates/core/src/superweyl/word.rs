use std::fmt;

use smallvec::SmallVec;

use super::parity::Parity;

/// Which family a generator belongs to: a coordinate `x` or a derivation `d`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    X,
    D,
}

impl Kind {
    pub fn tag(self) -> &'static str {
        match self {
            Kind::X => "x",
            Kind::D => "d",
        }
    }
}

/// Position `(row, col)` of a variable in the `(m+n) x k` coordinate matrix.
///
/// Indices are 1-based. Field order gives the canonical ordering: by column,
/// then by row. `odd` is determined by the row and carried along so that
/// words know their own signs.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Site {
    pub col: u8,
    pub row: u8,
    pub odd: bool,
}

impl Site {
    pub fn parity(self) -> Parity {
        Parity::from_odd(self.odd)
    }
}

/// A single letter `x_{i,a}` or `d_{i,a}`. Ordered with all `x` before all `d`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub kind: Kind,
    pub site: Site,
}

impl Generator {
    pub fn parity(self) -> Parity {
        self.site.parity()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.kind.tag(), self.site.row, self.site.col)
    }
}

pub(crate) type Factors = SmallVec<[(Site, u16); 4]>;

/// A normal-ordered monomial `x^alpha d^beta`: every `x` to the left of every
/// `d`, each block sorted by site. Odd sites carry exponent 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NOWord {
    pub(crate) xs: Factors,
    pub(crate) ds: Factors,
}

pub(crate) fn exponent(list: &Factors, site: Site) -> u16 {
    match list.binary_search_by(|(s, _)| s.cmp(&site)) {
        Ok(p) => list[p].1,
        Err(_) => 0,
    }
}

pub(crate) fn set_exponent(list: &mut Factors, site: Site, e: u16) {
    match list.binary_search_by(|(s, _)| s.cmp(&site)) {
        Ok(p) => {
            if e == 0 {
                list.remove(p);
            } else {
                list[p].1 = e;
            }
        }
        Err(p) => {
            if e != 0 {
                list.insert(p, (site, e));
            }
        }
    }
}

/// Number of odd letters strictly before `site`.
pub(crate) fn odd_before(list: &Factors, site: Site) -> usize {
    list.iter().take_while(|(s, _)| *s < site).filter(|(s, _)| s.odd).count()
}

pub(crate) fn odd_count(list: &Factors) -> usize {
    list.iter().filter(|(s, _)| s.odd).count()
}

/// Sign of concatenating two sorted blocks and re-sorting, or `None` when an
/// odd letter would repeat.
pub(crate) fn merge_blocks(left: &Factors, right: &Factors) -> Option<(i64, Factors)> {
    let mut out = left.clone();
    let mut swaps = 0usize;
    for &(site, e) in right.iter() {
        if site.odd {
            if exponent(left, site) > 0 {
                return None;
            }
            swaps += left.iter().filter(|(s, _)| s.odd && *s > site).count();
        }
        let cur = exponent(&out, site);
        set_exponent(&mut out, site, cur + e);
    }
    Some((if swaps % 2 == 0 { 1 } else { -1 }, out))
}

impl NOWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn is_identity(&self) -> bool {
        self.xs.is_empty() && self.ds.is_empty()
    }

    pub fn parity(&self) -> Parity {
        let odd = odd_count(&self.xs) + odd_count(&self.ds);
        Parity::from_odd(odd % 2 == 1)
    }

    pub fn x_exponent(&self, site: Site) -> u16 {
        exponent(&self.xs, site)
    }

    pub fn d_exponent(&self, site: Site) -> u16 {
        exponent(&self.ds, site)
    }

    /// `(site, exponent)` pairs of the coordinate block.
    pub fn x_factors(&self) -> impl Iterator<Item = (Site, u16)> + '_ {
        self.xs.iter().copied()
    }

    pub fn d_factors(&self) -> impl Iterator<Item = (Site, u16)> + '_ {
        self.ds.iter().copied()
    }

    /// `(generator, exponent)` pairs in canonical order.
    pub fn factors(&self) -> impl Iterator<Item = (Generator, u16)> + '_ {
        let xs = self.xs.iter().map(|&(s, e)| (Generator { kind: Kind::X, site: s }, e));
        let ds = self.ds.iter().map(|&(s, e)| (Generator { kind: Kind::D, site: s }, e));
        xs.chain(ds)
    }

    /// The letters of the word, exponents expanded.
    pub fn letters(&self) -> Vec<Generator> {
        let mut out = Vec::new();
        for (g, e) in self.factors() {
            out.extend(std::iter::repeat(g).take(e as usize));
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.xs.iter().chain(self.ds.iter()).map(|&(_, e)| e as usize).sum()
    }

    pub fn has_odd(&self) -> bool {
        odd_count(&self.xs) + odd_count(&self.ds) > 0
    }

    /// Builds a word from a multiset of letters given in any order, applying
    /// the supercommutative reordering sign. Returns `None` if an odd letter
    /// repeats. Contraction terms are ignored.
    pub fn from_letters(letters: &[Generator]) -> Option<(i64, NOWord)> {
        let mut sign = 1i64;
        for (p, a) in letters.iter().enumerate() {
            if !a.site.odd {
                continue;
            }
            for b in &letters[p + 1..] {
                if b.site.odd {
                    if a == b {
                        return None;
                    }
                    if b < a {
                        sign = -sign;
                    }
                }
            }
        }
        let mut word = NOWord::identity();
        for g in letters {
            let list = match g.kind {
                Kind::X => &mut word.xs,
                Kind::D => &mut word.ds,
            };
            let e = exponent(list, g.site);
            set_exponent(list, g.site, e + 1);
        }
        Some((sign, word))
    }
}

impl fmt::Display for NOWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let mut first = true;
        for (g, e) in self.factors() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{g}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn site(row: u8, col: u8, odd: bool) -> Site {
        Site { col, row, odd }
    }

    #[test]
    fn site_order_is_column_major() {
        assert!(site(2, 1, false) < site(1, 2, false));
        assert!(site(1, 1, false) < site(2, 1, true));
    }

    #[test]
    fn merge_sign_counts_odd_inversions() {
        let a = site(2, 1, true);
        let b = site(2, 2, true);
        let left: Factors = smallvec::smallvec![(b, 1)];
        let right: Factors = smallvec::smallvec![(a, 1)];
        let (s, merged) = merge_blocks(&left, &right).unwrap();
        assert_eq!(s, -1);
        assert_eq!(merged.as_slice(), &[(a, 1), (b, 1)]);
        assert!(merge_blocks(&left, &left).is_none());
    }

    #[test]
    fn even_letters_accumulate_exponents() {
        let g = Generator { kind: Kind::X, site: site(1, 1, false) };
        let (s, w) = NOWord::from_letters(&[g, g, g]).unwrap();
        assert_eq!(s, 1);
        assert_eq!(w.x_exponent(g.site), 3);
        assert_eq!(w.to_string(), "x(1,1)^3");
    }
}
