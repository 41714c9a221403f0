//! Squarefree monomials and squarefree monomial ideals.
//!
//! A squarefree monomial is its support: bit `i` of a `u64` stands for `x_i`.
//! Ideals are always kept as their unique minimal generating set.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{domain, Error, Result};
use crate::graphs::{bit, vertices_of, Graph, MAX_VERTICES};

/// Lexicographic order on the sorted variable lists: `x1x4 < x2x3`, `x1 < x1x2`.
pub fn lex_cmp(a: u64, b: u64) -> Ordering {
    vertices_of(a).cmp(vertices_of(b))
}

fn degree_lex(a: &u64, b: &u64) -> Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| lex_cmp(*a, *b))
}

fn ambient_mask(n: usize) -> u64 {
    ((1u64 << n) - 1) << 1
}

fn check_ambient(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::AmbientMismatch(a, b))
    }
}

/// `x_A` for a subset `A` of `1..=ambient`; the empty support is the constant 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SqfMonomial {
    support: u64,
    ambient: usize,
}

impl SqfMonomial {
    pub fn new(ambient: usize, vars: impl IntoIterator<Item = usize>) -> Result<Self> {
        if ambient > MAX_VERTICES {
            return Err(Error::TooManyVertices(ambient));
        }
        let mut support = 0;
        for v in vars {
            if v == 0 || v > ambient {
                return Err(Error::Input(format!("variable x{v} outside x1..x{ambient}")));
            }
            support |= bit(v);
        }
        Ok(SqfMonomial { support, ambient })
    }

    pub fn from_support(ambient: usize, support: u64) -> Result<Self> {
        if ambient > MAX_VERTICES {
            return Err(Error::TooManyVertices(ambient));
        }
        if support & !ambient_mask(ambient) != 0 {
            return Err(Error::Input(format!("support {support:#x} outside x1..x{ambient}")));
        }
        Ok(SqfMonomial { support, ambient })
    }

    pub fn one(ambient: usize) -> Self {
        SqfMonomial { support: 0, ambient }
    }

    pub fn support(&self) -> u64 {
        self.support
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn degree(&self) -> usize {
        self.support.count_ones() as usize
    }

    pub fn variables(&self) -> impl Iterator<Item = usize> {
        vertices_of(self.support)
    }

    pub fn lcm(&self, other: &SqfMonomial) -> Result<SqfMonomial> {
        check_ambient(self.ambient, other.ambient)?;
        Ok(SqfMonomial { support: self.support | other.support, ambient: self.ambient })
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &SqfMonomial) -> Result<bool> {
        check_ambient(self.ambient, other.ambient)?;
        Ok(self.support & !other.support == 0)
    }

    pub fn coprime(&self, other: &SqfMonomial) -> Result<bool> {
        check_ambient(self.ambient, other.ambient)?;
        Ok(self.support & other.support == 0)
    }
}

impl fmt::Display for SqfMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomial(f, self.support)
    }
}

pub(crate) fn write_monomial(f: &mut impl fmt::Write, support: u64) -> fmt::Result {
    if support == 0 {
        return write!(f, "1");
    }
    for (i, v) in vertices_of(support).enumerate() {
        if i > 0 {
            write!(f, "*")?;
        }
        write!(f, "x{v}")?;
    }
    Ok(())
}

/// A squarefree monomial ideal of `K[x_1..x_ambient]`, stored as its minimal
/// generators sorted by degree then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    ambient: usize,
    gens: Vec<u64>,
}

impl MonomialIdeal {
    pub fn zero(ambient: usize) -> Self {
        MonomialIdeal { ambient, gens: Vec::new() }
    }

    /// The whole ring, generated by 1.
    pub fn unit(ambient: usize) -> Self {
        MonomialIdeal { ambient, gens: vec![0] }
    }

    /// Minimalizes an arbitrary family of supports.
    pub fn from_supports(ambient: usize, supports: impl IntoIterator<Item = u64>) -> Result<Self> {
        if ambient > MAX_VERTICES {
            return Err(Error::TooManyVertices(ambient));
        }
        let mask = ambient_mask(ambient);
        let supports: Vec<u64> = supports.into_iter().collect();
        if let Some(bad) = supports.iter().find(|&&s| s & !mask != 0) {
            return Err(Error::Input(format!("support {bad:#x} outside x1..x{ambient}")));
        }
        Ok(Self::minimal(ambient, supports))
    }

    /// Removes every monomial that another member strictly divides.
    pub fn minimalize(ambient: usize, gens: &[SqfMonomial]) -> Result<Self> {
        for g in gens {
            check_ambient(ambient, g.ambient)?;
        }
        Ok(Self::minimal(ambient, gens.iter().map(|g| g.support).collect()))
    }

    pub(crate) fn minimal(ambient: usize, mut supports: Vec<u64>) -> Self {
        supports.sort_unstable_by(degree_lex);
        supports.dedup();
        let mut gens: Vec<u64> = Vec::with_capacity(supports.len());
        for s in supports {
            if !gens.iter().any(|&h| h & !s == 0) {
                gens.push(s);
            }
        }
        gens.sort_unstable_by(degree_lex);
        MonomialIdeal { ambient, gens }
    }

    /// `I(G)`, in as many variables as `G` has vertices.
    pub fn edge_ideal(g: &Graph) -> Self {
        Self::minimal(g.n(), g.edges().into_iter().map(|(u, v)| bit(u) | bit(v)).collect())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Minimal generator supports.
    pub fn gens(&self) -> &[u64] {
        &self.gens
    }

    pub fn generators(&self) -> impl Iterator<Item = SqfMonomial> + '_ {
        self.gens.iter().map(|&s| SqfMonomial { support: s, ambient: self.ambient })
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.first() == Some(&0)
    }

    /// Union of all generator supports.
    pub fn support(&self) -> u64 {
        self.gens.iter().fold(0, |m, &g| m | g)
    }

    /// Whether `x_A` lies in the ideal.
    pub fn contains_support(&self, a: u64) -> bool {
        self.gens.iter().any(|&g| g & !a == 0)
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|&g| self.contains_support(g))
    }

    /// Copy of the ideal in a polynomial ring with `ambient` variables.
    pub fn with_ambient(&self, ambient: usize) -> Result<Self> {
        if ambient > MAX_VERTICES {
            return Err(Error::TooManyVertices(ambient));
        }
        if self.support() & !ambient_mask(ambient) != 0 {
            return domain(format!("generators use variables beyond x{ambient}"));
        }
        Ok(MonomialIdeal { ambient, gens: self.gens.clone() })
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<Self> {
        check_ambient(self.ambient, other.ambient)?;
        Ok(Self::minimal(self.ambient, self.gens.iter().chain(&other.gens).copied().collect()))
    }

    /// Intersection of squarefree monomial ideals: generated by pairwise lcms.
    pub fn intersection(&self, other: &MonomialIdeal) -> Result<Self> {
        check_ambient(self.ambient, other.ambient)?;
        let lcms = self.gens.iter().flat_map(|&a| other.gens.iter().map(move |&b| a | b)).collect();
        Ok(Self::minimal(self.ambient, lcms))
    }

    /// `u * I`; `u` must be coprime to every generator so the result stays squarefree.
    pub fn scale(&self, u: &SqfMonomial) -> Result<Self> {
        check_ambient(self.ambient, u.ambient)?;
        self.scale_support(u.support)
    }

    pub(crate) fn scale_support(&self, u: u64) -> Result<Self> {
        if let Some(g) = self.gens.iter().find(|&&g| g & u != 0) {
            let mut text = String::new();
            write_monomial(&mut text, *g).ok();
            return domain(format!("multiplier shares a variable with generator {text}; would leave squarefree world"));
        }
        Ok(MonomialIdeal { ambient: self.ambient, gens: self.gens.iter().map(|&g| g | u).collect() })
    }

    /// `(x_{i_1}, ..., x_{i_t}) * I`.
    pub fn variable_multiple(&self, vars: &[usize]) -> Result<Self> {
        let mut out = Vec::with_capacity(vars.len() * self.gens.len());
        for &v in vars {
            if v == 0 || v > self.ambient {
                return Err(Error::Input(format!("variable x{v} outside x1..x{}", self.ambient)));
            }
            let scaled = self.scale_support(bit(v))?;
            out.extend(scaled.gens);
        }
        Ok(Self::minimal(self.ambient, out))
    }

    /// `I^[k]` for `k >= 1`: products of `k` pairwise coprime generators.
    pub fn squarefree_power(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Input("squarefree powers start at k = 1".into()));
        }
        Ok(self.power_or_unit(k))
    }

    /// Like [`Self::squarefree_power`] but with `I^[0]` the unit ideal.
    pub fn power_or_unit(&self, k: usize) -> Self {
        if k == 0 {
            return Self::unit(self.ambient);
        }
        fn go(gens: &[u64], k: usize, acc: u64, out: &mut Vec<u64>) {
            if k == 0 {
                out.push(acc);
                return;
            }
            for (i, &g) in gens.iter().enumerate() {
                if gens.len() - i < k {
                    break;
                }
                if g & acc == 0 {
                    go(&gens[i + 1..], k - 1, acc | g, out);
                }
            }
        }
        let mut out = Vec::new();
        go(&self.gens, k, 0, &mut out);
        Self::minimal(self.ambient, out)
    }

    /// Monomial grade: the largest set of pairwise coprime generators.
    pub fn monomial_grade(&self) -> usize {
        fn go(cands: &[u64], size: usize, best: &mut usize) {
            *best = (*best).max(size);
            for (i, &g) in cands.iter().enumerate() {
                if size + cands.len() - i <= *best {
                    return;
                }
                let rest: Vec<u64> = cands[i + 1..].iter().copied().filter(|&h| h & g == 0).collect();
                go(&rest, size + 1, best);
            }
        }
        if self.is_unit() {
            // 1 is coprime to itself, but a regular sequence cannot contain units.
            return 0;
        }
        let mut best = 0;
        go(&self.gens, 0, &mut best);
        best
    }

    pub fn initial_degree(&self) -> Result<usize> {
        match self.gens.first() {
            Some(&g) => Ok(g.count_ones() as usize),
            None => domain("the zero ideal has no initial degree"),
        }
    }

    /// `∂*I`: generated by `f / x_i` for minimal generators `f` and `x_i | f`.
    pub fn partial_star(&self) -> Result<Self> {
        if self.is_unit() {
            return domain("generator 1 has no variable to remove");
        }
        let out = self
            .gens
            .iter()
            .flat_map(|&g| vertices_of(g).map(move |v| g & !bit(v)))
            .collect();
        Ok(Self::minimal(self.ambient, out))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (i, &g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write_monomial(f, g)?;
        }
        write!(f, ")")
    }
}
