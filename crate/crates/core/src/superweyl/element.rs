use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use super::parity::{Grade, Parity};
use super::word::{
    exponent, merge_blocks, odd_before, odd_count, set_exponent, Generator, Kind, NOWord, Site,
};
use crate::rational::{binomial, falling_factorial, Rational};
use crate::ring::Ring;
use crate::window::Comparison;

/// An element of the Weyl superalgebra in canonical normal-ordered form:
/// a finite rational combination of [`NOWord`]s with no zero coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct NOElement {
    terms: BTreeMap<NOWord, Rational>,
}

type Scratch = SmallVec<[(NOWord, Rational); 4]>;

/// `d_site^power * (sum of terms)`, with every term normal ordered.
fn apply_d_power(site: Site, power: u16, terms: Scratch) -> Scratch {
    let mut out = Scratch::new();
    for (w, c) in terms {
        if site.odd {
            debug_assert_eq!(power, 1);
            // contraction with the x already present
            if exponent(&w.xs, site) == 1 {
                let mut nw = w.clone();
                set_exponent(&mut nw.xs, site, 0);
                let sign = if odd_before(&w.xs, site) % 2 == 0 { 1 } else { -1 };
                out.push((nw, &c * &Rational::from_int(sign)));
            }
            // d passes every x and lands in the d block
            if exponent(&w.ds, site) == 0 {
                let sign_x = odd_count(&w.xs) % 2;
                let sign_d = odd_before(&w.ds, site) % 2;
                let sign = if (sign_x + sign_d) % 2 == 0 { 1 } else { -1 };
                let mut nw = w;
                set_exponent(&mut nw.ds, site, 1);
                out.push((nw, &c * &Rational::from_int(sign)));
            }
        } else {
            let gamma = exponent(&w.xs, site);
            let delta = exponent(&w.ds, site);
            for kappa in 0..=power.min(gamma) {
                let mult = &binomial(power as i64, kappa as u64)
                    * &falling_factorial(gamma as u64, kappa as u64);
                let mut nw = w.clone();
                set_exponent(&mut nw.xs, site, gamma - kappa);
                set_exponent(&mut nw.ds, site, delta + power - kappa);
                out.push((nw, &c * &mult));
            }
        }
    }
    out
}

/// Product of two normal-ordered words, fed term by term to `emit`.
fn word_product(lhs: &NOWord, rhs: &NOWord, mut emit: impl FnMut(NOWord, Rational)) {
    let mut cur: Scratch = SmallVec::new();
    cur.push((rhs.clone(), Rational::ONE));
    for &(site, e) in lhs.ds.iter().rev() {
        cur = apply_d_power(site, e, cur);
    }
    for (w, c) in cur {
        if let Some((sign, xs)) = merge_blocks(&lhs.xs, &w.xs) {
            let c = if sign == 1 { c } else { -c };
            emit(NOWord { xs, ds: w.ds }, c);
        }
    }
}

impl NOElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Rational::ONE)
    }

    pub fn scalar(c: Rational) -> Self {
        Self::from_word(NOWord::identity(), c)
    }

    pub fn from_word(w: NOWord, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        Self { terms }
    }

    pub fn generator(g: Generator) -> Self {
        let (_, w) = NOWord::from_letters(&[g]).expect("single letter");
        Self::from_word(w, Rational::ONE)
    }

    /// Product of letters taken in the given order, fully normal ordered
    /// (contraction terms included).
    pub fn product_of(letters: &[Generator]) -> Self {
        letters
            .iter()
            .fold(Self::one(), |acc, &g| acc.mul_ref(&Self::generator(g)))
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (NOWord, Rational)>) -> Self {
        let mut terms: BTreeMap<NOWord, Rational> = BTreeMap::new();
        for (w, c) in iter {
            *terms.entry(w).or_default() += &c;
        }
        terms.retain(|_, c| !c.is_zero());
        Self { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NOWord, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &NOWord) -> Rational {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// The rational `c` if the element equals `c * 1`.
    pub fn as_scalar(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::ZERO),
            1 => {
                let (w, c) = self.terms.iter().next().unwrap();
                w.is_identity().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn has_odd_generators(&self) -> bool {
        self.terms.keys().any(|w| w.has_odd())
    }

    pub fn grade(&self) -> Grade {
        self.terms
            .keys()
            .fold(Grade::Zero, |g, w| g.join(Grade::Pure(w.parity())))
    }

    pub fn scale_ref(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            match terms.get_mut(w) {
                Some(x) => {
                    *x += c;
                    if x.is_zero() {
                        terms.remove(w);
                    }
                }
                None => {
                    terms.insert(w.clone(), c.clone());
                }
            }
        }
        Self { terms }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (w, c) in &other.terms {
            match self.terms.get_mut(w) {
                Some(x) => {
                    *x += c;
                    if x.is_zero() {
                        self.terms.remove(w);
                    }
                }
                None => {
                    self.terms.insert(w.clone(), c.clone());
                }
            }
        }
    }

    pub fn neg_ref(&self) -> Self {
        Self { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.as_scalar() {
            return other.scale_ref(&c);
        }
        if let Some(c) = other.as_scalar() {
            return self.scale_ref(&c);
        }
        let mut acc: HashMap<NOWord, Rational> = HashMap::new();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let c12 = c1 * c2;
                word_product(w1, w2, |w, c| {
                    *acc.entry(w).or_default() += &(&c12 * &c);
                });
            }
        }
        Self { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// `pq - (-1)^{|p||q|} qp`; both arguments must be homogeneous.
    pub fn super_commutator(&self, other: &Self) -> crate::Result<Self> {
        Ring::super_commutator(self, other)
    }

    /// Slot-wise comparison keyed by the words present on either side.
    pub fn compare(&self, other: &Self) -> Comparison {
        let mut cmp = Comparison::new("exact");
        let mut words: Vec<&NOWord> = self.terms.keys().chain(other.terms.keys()).collect();
        words.sort();
        words.dedup();
        for (i, w) in words.into_iter().enumerate() {
            cmp.push(vec![i as i64], self.coeff(w) == other.coeff(w));
        }
        cmp
    }
}

impl Ring for NOElement {
    fn zero() -> Self {
        NOElement::zero()
    }
    fn one() -> Self {
        NOElement::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.add_ref(rhs)
    }
    fn neg(&self) -> Self {
        self.neg_ref()
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.mul_ref(rhs)
    }
    fn scale(&self, c: &Rational) -> Self {
        self.scale_ref(c)
    }
    fn grade(&self) -> Grade {
        NOElement::grade(self)
    }
}

impl<'a> Add<&'a NOElement> for &'a NOElement {
    type Output = NOElement;
    fn add(self, rhs: &'a NOElement) -> NOElement {
        self.add_ref(rhs)
    }
}

impl<'a> Sub<&'a NOElement> for &'a NOElement {
    type Output = NOElement;
    fn sub(self, rhs: &'a NOElement) -> NOElement {
        self.add_ref(&rhs.neg_ref())
    }
}

impl<'a> Mul<&'a NOElement> for &'a NOElement {
    type Output = NOElement;
    fn mul(self, rhs: &'a NOElement) -> NOElement {
        self.mul_ref(rhs)
    }
}

impl Neg for &NOElement {
    type Output = NOElement;
    fn neg(self) -> NOElement {
        self.neg_ref()
    }
}

impl fmt::Display for NOElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if w.is_identity() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{abs}*{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NOElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NOElement({self})")
    }
}

/// Serialises as a sorted list of `{word: [[kind,row,col,exp],...], coeff: "p/q"}`.
impl serde::Serialize for NOElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct Term {
            word: Vec<(&'static str, u8, u8, u16)>,
            coeff: String,
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(w, c)| Term {
                word: w
                    .factors()
                    .map(|(g, e)| (g.kind.tag(), g.site.row, g.site.col, e))
                    .collect(),
                coeff: c.to_string(),
            })
            .collect();
        terms.serialize(s)
    }
}

/// Parity of `x_{i,a}`, `d_{i,a}` and the bookkeeping of the `(m+n) x k`
/// coordinate matrix.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuperWeyl {
    pub m: usize,
    pub n: usize,
    pub k: usize,
}

impl SuperWeyl {
    pub fn new(m: usize, n: usize, k: usize) -> Self {
        assert!(m + n <= u8::MAX as usize && k <= u8::MAX as usize);
        Self { m, n, k }
    }

    pub fn rows(&self) -> usize {
        self.m + self.n
    }

    /// Site of `x_{i,a}` / `d_{i,a}`; `i` and `a` are 1-based.
    pub fn site(&self, i: usize, a: usize) -> Site {
        assert!((1..=self.rows()).contains(&i) && (1..=self.k).contains(&a));
        Site { col: a as u8, row: i as u8, odd: i > self.m }
    }

    pub fn row_parity(&self, i: usize) -> Parity {
        Parity::from_odd(i > self.m)
    }

    pub fn x_gen(&self, i: usize, a: usize) -> Generator {
        Generator { kind: Kind::X, site: self.site(i, a) }
    }

    pub fn d_gen(&self, i: usize, a: usize) -> Generator {
        Generator { kind: Kind::D, site: self.site(i, a) }
    }

    pub fn x(&self, i: usize, a: usize) -> NOElement {
        NOElement::generator(self.x_gen(i, a))
    }

    pub fn d(&self, i: usize, a: usize) -> NOElement {
        NOElement::generator(self.d_gen(i, a))
    }

    /// `x_{i,a} d_{j,b}` as a single normal-ordered word.
    pub fn xd(&self, i: usize, a: usize, j: usize, b: usize) -> NOElement {
        let (s, w) = NOWord::from_letters(&[self.x_gen(i, a), self.d_gen(j, b)]).unwrap();
        NOElement::from_word(w, Rational::from_int(s))
    }

    /// Image of `e_{i,j}` of gl(m|n): `sum_a x_{i,a} d_{j,a}`.
    pub fn pi_glmn(&self, i: usize, j: usize) -> NOElement {
        NOElement::from_terms((1..=self.k).map(|a| {
            let e = self.xd(i, a, j, a);
            let (w, c) = e.terms().next().map(|(w, c)| (w.clone(), c.clone())).unwrap();
            (w, c)
        }))
    }

    /// Image of `e_{a,b}` of gl(k): `sum_i x_{i,a} d_{i,b}`.
    pub fn pi_glk(&self, a: usize, b: usize) -> NOElement {
        (1..=self.rows()).fold(NOElement::zero(), |acc, i| acc.add_ref(&self.xd(i, a, i, b)))
    }

    /// All generators, `x` block first.
    pub fn generators(&self) -> Vec<Generator> {
        let mut gens = Vec::new();
        for kind in [Kind::X, Kind::D] {
            for a in 1..=self.k {
                for i in 1..=self.rows() {
                    gens.push(Generator { kind, site: self.site(i, a) });
                }
            }
        }
        gens
    }
}
