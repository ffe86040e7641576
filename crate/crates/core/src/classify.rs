//! Irreducible components of `V(n,a,b)`.
//!
//! Regular components are closures of strata `Δ(a,b)` indexed by partition
//! pairs; each contains a dense family of direct sums of diamond modules
//! `M(x^c y^d, λ)`. The remaining components are closures of open orbits of
//! semi-projective or semi-injective modules.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exactla::rat;
use crate::homalg::{end_dim_of_sum, ext1_vanishes};
use crate::modmatrix::{band_module, direct_sum, string_module, MatrixPairModule};
use crate::partitions::Partition;
use crate::words::{enumerate_open_strings, AlgebraParams, Letter, Side, Word};

/// A pair of Jordan types `(a, b)` of the same size, parts bounded by the
/// nilpotency indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionPair {
    a: Partition,
    b: Partition,
    params: AlgebraParams,
}

impl PartitionPair {
    pub fn new(a: Partition, b: Partition, params: AlgebraParams) -> Result<Self> {
        if a.size() != b.size() {
            return Err(Error::SizeMismatch(a.size(), b.size()));
        }
        if a.largest_part() > params.a() || b.largest_part() > params.b() {
            return Err(Error::InvalidPartition(format!(
                "({a},{b}) has parts too large for {params}"
            )));
        }
        Ok(PartitionPair { a, b, params })
    }

    pub fn from_parts(a: &[usize], b: &[usize], params: AlgebraParams) -> Result<Self> {
        Self::new(Partition::new(a.to_vec())?, Partition::new(b.to_vec())?, params)
    }

    pub fn n(&self) -> usize {
        self.a.size()
    }

    pub fn a(&self) -> &Partition {
        &self.a
    }

    pub fn b(&self) -> &Partition {
        &self.b
    }

    pub fn params(&self) -> AlgebraParams {
        self.params
    }

    /// `l(a) + l(b) = n` and `l(a-1) = l(b-1)`.
    pub fn is_regular(&self) -> bool {
        self.a.len() + self.b.len() == self.n() && self.a.len_minus_one() == self.b.len_minus_one()
    }

    /// `(i, p) = (l(a), l(a-1))`.
    pub fn cell(&self) -> (usize, usize) {
        (self.a.len(), self.a.len_minus_one())
    }

    fn require_regular(&self) -> Result<()> {
        if self.is_regular() {
            Ok(())
        } else {
            Err(Error::Precondition(format!("{self} is not regular")))
        }
    }
}

impl fmt::Display for PartitionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentDescriptor {
    /// Closure of `Δ(a,b)`, dense family given as `(band, multiplicity)`.
    Regular {
        pair: PartitionPair,
        family: Vec<(Word, usize)>,
        dim: usize,
    },
    /// Closure of the orbit of `⊕ M(C_i)`; strings listed with repetition.
    OpenOrbit { side: Side, strings: Vec<Word>, dim: usize },
    /// The single point of `V(1,a,b)`.
    Point,
}

impl ComponentDescriptor {
    pub fn dim(&self) -> usize {
        match self {
            ComponentDescriptor::Regular { dim, .. } | ComponentDescriptor::OpenOrbit { dim, .. } => *dim,
            ComponentDescriptor::Point => 0,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ComponentDescriptor::Regular { .. } => "regular",
            ComponentDescriptor::OpenOrbit { .. } => "orbit",
            ComponentDescriptor::Point => "point",
        }
    }

    pub fn is_regular(&self) -> bool {
        matches!(self, ComponentDescriptor::Regular { .. })
    }

    /// Row label in the style `(xxy,3),xyy` or `xxyy ⊕ xxyxyy`.
    pub fn label(&self) -> String {
        match self {
            ComponentDescriptor::Regular { family, .. } => family_label(family),
            ComponentDescriptor::OpenOrbit { strings, .. } => {
                strings.iter().map(Word::plain).collect::<Vec<_>>().join(" ⊕ ")
            }
            ComponentDescriptor::Point => "0".to_string(),
        }
    }

    /// Generic ranks `(rk A, rk B)` on the component.
    pub fn generic_ranks(&self) -> Result<(usize, usize)> {
        let m = self.realize()?;
        let stats = m.stats()?;
        Ok((stats.rk_a, stats.rk_b))
    }

    /// A representative: bands with parameters `λ_j = j + 1` (all distinct),
    /// or the direct sum of the string modules.
    pub fn realize(&self) -> Result<MatrixPairModule> {
        match self {
            ComponentDescriptor::Regular { pair, family, .. } => {
                let mut mods = Vec::new();
                let mut lambda = 1i64;
                for (band, k) in family {
                    for _ in 0..*k {
                        lambda += 1;
                        mods.push(band_module(band, &[rat(lambda)])?);
                    }
                }
                direct_sum(pair.params(), &mods)
            }
            ComponentDescriptor::OpenOrbit { strings, .. } => {
                let params = strings
                    .first()
                    .map(Word::params)
                    .ok_or_else(|| Error::Precondition("empty orbit".into()))?;
                direct_sum(params, &strings.iter().map(string_module).collect::<Vec<_>>())
            }
            ComponentDescriptor::Point => Ok(MatrixPairModule::zero(AlgebraParams::new(2, 2)?, 1)),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            ComponentDescriptor::Regular { pair, family, dim } => json!({
                "kind": "regular",
                "a": pair.a().parts(),
                "b": pair.b().parts(),
                "family": family.iter().map(|(w, k)| json!({"band": w.caret(), "mult": k})).collect::<Vec<_>>(),
                "dim": dim,
            }),
            ComponentDescriptor::OpenOrbit { side, strings, dim } => json!({
                "kind": "orbit",
                "side": side,
                "strings": strings,
                "dim": dim,
            }),
            ComponentDescriptor::Point => json!({"kind": "point", "dim": 0}),
        }
    }
}

fn family_label(family: &[(Word, usize)]) -> String {
    family
        .iter()
        .map(|(w, k)| {
            if *k == 1 {
                w.plain()
            } else {
                format!("({},{k})", w.plain())
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

fn sort_components(components: &mut [ComponentDescriptor]) {
    let rank = |c: &ComponentDescriptor| match c {
        ComponentDescriptor::Regular { .. } | ComponentDescriptor::Point => 0,
        ComponentDescriptor::OpenOrbit {
            side: Side::SemiProjective,
            ..
        } => 1,
        ComponentDescriptor::OpenOrbit {
            side: Side::SemiInjective,
            ..
        } => 2,
    };
    components.sort_by_cached_key(|c| (std::cmp::Reverse(c.dim()), rank(c), c.label()));
}

pub fn is_regular_pair(pair: &PartitionPair) -> bool {
    pair.is_regular()
}

/// The bands `x^{c_i} y^{d_{t-i+1}}` with `c = a - 1`, `d = b - 1`, equal bands
/// merged; ordered by multiplicity, then length (both descending), then word.
pub fn diamond_family(pair: &PartitionPair) -> Result<Vec<(Word, usize)>> {
    pair.require_regular()?;
    let params = pair.params();
    let c = pair.a().minus_one_or_empty();
    let d = pair.b().minus_one_or_empty();
    let t = c.len();
    let mut counts: HashMap<Word, usize> = HashMap::new();
    for i in 0..t {
        *counts
            .entry(Word::x_y(params, c.parts()[i], d.parts()[t - 1 - i])?)
            .or_insert(0) += 1;
    }
    let mut family: Vec<(Word, usize)> = counts.into_iter().collect();
    family.sort_by(|(w1, k1), (w2, k2)| k2.cmp(k1).then(w2.len().cmp(&w1.len())).then(w1.cmp(w2)));
    Ok(family)
}

/// `n^2 - Σ m_i^2 - Σ n_i^2 + l(a-1)^2` with `m = (a-1)*`, `n = (b-1)*`.
pub fn delta_dim(pair: &PartitionPair) -> Result<usize> {
    pair.require_regular()?;
    let n = pair.n();
    let p = pair.a().len_minus_one();
    let m = pair.a().minus_one_or_empty().dual().square_sum();
    let k = pair.b().minus_one_or_empty().dual().square_sum();
    Ok(n * n + p * p - m - k)
}

/// Greedy dominance-maximal partition of `total` into `big` parts in
/// `[2, cap]` followed by `ones` ones.
fn greedy_parts(total: usize, big: usize, ones: usize, cap: usize) -> Option<Partition> {
    if total < 2 * big || total > cap * big {
        return None;
    }
    let mut parts = Vec::with_capacity(big + ones);
    let mut rest = total;
    for k in (0..big).rev() {
        let part = cap.min(rest - 2 * k);
        parts.push(part);
        rest -= part;
    }
    parts.extend(std::iter::repeat_n(1, ones));
    Partition::new(parts).ok()
}

/// The dominance-maximal regular pair with `l(a) = i`, `l(b) = n - i` and
/// `l(a-1) = p`, if any.
pub fn ip_maximal(n: usize, params: AlgebraParams, i: usize, p: usize) -> Option<PartitionPair> {
    if p == 0 || i < p || n < i + p {
        return None;
    }
    let a = greedy_parts(n - (i - p), p, i - p, params.a())?;
    let b = greedy_parts(i + p, p, n - i - p, params.b())?;
    PartitionPair::new(a, b, params).ok()
}

fn entries_outside(p: &Partition, top: usize) -> usize {
    p.parts().iter().filter(|&&x| x != 1 && x != 2 && x != top).count()
}

/// At most one entry of `a` outside `{1, 2, a}`, the same for `b`, and
/// `l(a-1) <= |a ∈ a| + |b ∈ b| + 1`.
pub fn is_regular_component(pair: &PartitionPair) -> Result<bool> {
    pair.require_regular()?;
    let (a, b) = (pair.params().a(), pair.params().b());
    Ok(entries_outside(pair.a(), a) <= 1
        && entries_outside(pair.b(), b) <= 1
        && pair.a().len_minus_one() <= pair.a().multiplicity(a) + pair.b().multiplicity(b) + 1)
}

fn regular_descriptor(pair: PartitionPair) -> Result<ComponentDescriptor> {
    let family = diamond_family(&pair)?;
    let dim = delta_dim(&pair)?;
    Ok(ComponentDescriptor::Regular { pair, family, dim })
}

pub fn regular_components(n: usize, params: AlgebraParams) -> Vec<ComponentDescriptor> {
    let mut out: Vec<ComponentDescriptor> = (1..n)
        .flat_map(|i| (1..=i.min(n - i)).map(move |p| (i, p)))
        .filter_map(|(i, p)| ip_maximal(n, params, i, p))
        .filter(|pair| is_regular_component(pair).expect("regular by construction"))
        .map(|pair| regular_descriptor(pair).expect("regular by construction"))
        .collect();
    sort_components(&mut out);
    out
}

/// Multisets of open semi-projective strings of total dimension `n` whose
/// members pairwise have vanishing `Ext^1` in both directions.
pub fn open_string_sums(n: usize, params: AlgebraParams) -> Vec<Vec<Word>> {
    let strings: Vec<Word> = (1..=n).flat_map(|dim| enumerate_open_strings(dim, params)).collect();
    let dims: Vec<usize> = strings.iter().map(|s| s.len() + 1).collect();
    let pairs: Vec<(usize, usize)> = (0..strings.len())
        .flat_map(|i| (i..strings.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| dims[i] + dims[j] <= n)
        .collect();
    let compatible: HashMap<(usize, usize), bool> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let ok = ext1_vanishes(&strings[i], &strings[j]).expect("semi-projective")
                && (i == j || ext1_vanishes(&strings[j], &strings[i]).expect("semi-projective"));
            ((i, j), ok)
        })
        .collect();

    fn extend(
        start: usize,
        remaining: usize,
        chosen: &mut Vec<usize>,
        dims: &[usize],
        compatible: &HashMap<(usize, usize), bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if remaining == 0 {
            out.push(chosen.clone());
            return;
        }
        for k in start..dims.len() {
            if dims[k] > remaining {
                continue;
            }
            if chosen
                .iter()
                .all(|&j| compatible.get(&(j, k)).copied().unwrap_or(false))
            {
                chosen.push(k);
                extend(k, remaining - dims[k], chosen, dims, compatible, out);
                chosen.pop();
            }
        }
    }

    let mut found = Vec::new();
    extend(0, n, &mut Vec::new(), &dims, &compatible, &mut found);
    found
        .into_iter()
        .map(|ix| ix.into_iter().map(|k| strings[k].clone()).collect())
        .collect()
}

fn sum_orbit_dim(n: usize, strings: &[Word]) -> usize {
    let mut groups: Vec<(MatrixPairModule, usize)> = Vec::new();
    let mut last: Option<&Word> = None;
    for s in strings {
        if last == Some(s) {
            groups.last_mut().expect("nonempty").1 += 1;
        } else {
            groups.push((string_module(s), 1));
            last = Some(s);
        }
    }
    n * n - end_dim_of_sum(&groups).expect("shared params")
}

pub fn nonregular_components(n: usize, params: AlgebraParams) -> Vec<ComponentDescriptor> {
    let sums = open_string_sums(n, params);
    let dims: Vec<usize> = sums.par_iter().map(|s| sum_orbit_dim(n, s)).collect();
    let mut out = Vec::new();
    for (strings, dim) in sums.into_iter().zip(dims) {
        let mirrored = strings.iter().map(Word::reverse).collect();
        out.push(ComponentDescriptor::OpenOrbit {
            side: Side::SemiProjective,
            strings,
            dim,
        });
        out.push(ComponentDescriptor::OpenOrbit {
            side: Side::SemiInjective,
            strings: mirrored,
            dim,
        });
    }
    sort_components(&mut out);
    out
}

/// The outcome of a classification run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub n: usize,
    /// Parameters actually used, `(min(a,n), min(b,n))` raised to at least 2.
    pub params: AlgebraParams,
    pub requested: (usize, usize),
    pub components: Vec<ComponentDescriptor>,
    pub notes: Vec<String>,
}

impl Classification {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "a": self.params.a(),
            "b": self.params.b(),
            "requested": {"a": self.requested.0, "b": self.requested.1},
            "components": self.components.iter().map(ComponentDescriptor::to_json).collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }

    /// One row per component: kind, label, dimension.
    pub fn to_table(&self) -> String {
        let count = self.components.len();
        let noun = if count == 1 { "component" } else { "components" };
        let mut out = format!(
            "V({},{},{}): {count} {noun}\n",
            self.n,
            self.params.a(),
            self.params.b()
        );
        let width = self
            .components
            .iter()
            .map(|c| c.label().chars().count())
            .max()
            .unwrap_or(0);
        for c in &self.components {
            let kind = match c {
                ComponentDescriptor::OpenOrbit { side, .. } => side.to_string(),
                other => other.kind().to_string(),
            };
            let label = c.label();
            let pad = width - label.chars().count();
            out.push_str(&format!("{kind:<15} {label}{} {}\n", " ".repeat(pad), c.dim()));
        }
        for note in &self.notes {
            out.push_str(&format!("note: {note}\n"));
        }
        out
    }
}

/// Classifies `V(n,a,b)` for `n >= 1`, `a, b >= 2`.
pub fn components(n: usize, a: usize, b: usize) -> Result<Classification> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    AlgebraParams::new(a, b)?;
    let params = AlgebraParams::new(a.min(n).max(2), b.min(n).max(2))?;
    let mut notes = Vec::new();
    if (params.a(), params.b()) != (a, b) {
        notes.push(format!(
            "nilpotency indices reduced to a = {}, b = {}",
            params.a(),
            params.b()
        ));
    }
    if n == 1 {
        notes.push("n = 1 lies outside the range n >= 2 of the classification; V(1,a,b) is a point".into());
        return Ok(Classification {
            n,
            params,
            requested: (a, b),
            components: vec![ComponentDescriptor::Point],
            notes,
        });
    }
    let mut all = regular_components(n, params);
    all.extend(nonregular_components(n, params));
    sort_components(&mut all);
    notes.push(
        "sums mixing semi-projective and semi-injective strings never have open orbits and are not enumerated".into(),
    );
    Ok(Classification {
        n,
        params,
        requested: (a, b),
        components: all,
        notes,
    })
}

/// The `n - 1` components of `V(n,n,n)`: for `i = 1..n-1` the closure of
/// `{rk A <= n-i, rk B <= i}`, carried as the family of `x^{n-i} y^i`.
pub fn nnn_components(n: usize) -> Result<Vec<ComponentDescriptor>> {
    if n < 2 {
        return Err(Error::Precondition("n must be at least 2".into()));
    }
    let params = AlgebraParams::new(n, n)?;
    let mut out = Vec::new();
    for i in 1..n {
        let mut a = vec![n - i + 1];
        a.extend(std::iter::repeat_n(1, i - 1));
        let mut b = vec![i + 1];
        b.extend(std::iter::repeat_n(1, n - i - 1));
        let pair = PartitionPair::from_parts(&a, &b, params)?;
        out.push(ComponentDescriptor::Regular {
            pair,
            family: vec![(Word::x_y(params, n - i, i)?, 1)],
            dim: n * n - n + 1,
        });
    }
    sort_components(&mut out);
    Ok(out)
}

/// Whether the regular locus is dense: `n <= a+b-2` or `n = a+b`.
pub fn regular_dense(n: usize, params: AlgebraParams) -> bool {
    let (a, b) = (params.a(), params.b());
    n + 2 <= a + b || n == a + b
}

/// `Δ(a,b) ⊆ closure of Δ(c,d)` for regular pairs in the same `(i,p)` cell.
pub fn stratum_closure_leq(ab: &PartitionPair, cd: &PartitionPair) -> Result<bool> {
    ab.require_regular()?;
    cd.require_regular()?;
    if ab.params() != cd.params() {
        return Err(Error::ParamsMismatch);
    }
    if ab.n() != cd.n() || ab.cell() != cd.cell() {
        return Err(Error::Precondition(format!("{ab} and {cd} lie in different cells")));
    }
    Ok(ab.a().dominated_by(cd.a())? && ab.b().dominated_by(cd.b())?)
}

/// `Δ(a) ⊆ closure of Δ(c)` in `V(n,n,n)`.
pub fn delta_closure_leq_nnn(a: &Partition, c: &Partition, n: usize) -> Result<bool> {
    for p in [a, c] {
        if p.size() != n || p.largest_part() > n {
            return Err(Error::InvalidPartition(format!("{p} is not a partition of {n}")));
        }
    }
    if a == c {
        return Ok(true);
    }
    if a.is_all_ones() {
        let mut parts = vec![2];
        parts.extend(std::iter::repeat_n(1, n.saturating_sub(2)));
        return Ok(n >= 2 && c.parts() == parts.as_slice());
    }
    Ok(a.dominated_by(c)? && a.len() == c.len())
}

fn check_open_ranges(params: AlgebraParams, p: usize, r: usize, s: usize, v: usize, w: usize) -> Result<()> {
    let (a, b) = (params.a(), params.b());
    let ok = p >= 1
        && v + 2 <= a
        && w + 2 <= b
        && r < p
        && s < p
        && (v != 0 || r == 0)
        && (w != 0 || s == 0)
        && (p - r > 1 || v == 0)
        && (p - s > 1 || w == 0);
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "(p,r,s,v,w) = ({p},{r},{s},{v},{w}) out of range for {params}"
        )))
    }
}

/// `a - 1 = ((a-1)^{p-r-1}, a-v-1, 1^r)` and the same for `b - 1`; the pair
/// has size `|a-1| + |b-1| + 1`.
pub fn open_orbit_pair(
    params: AlgebraParams,
    p: usize,
    r: usize,
    s: usize,
    v: usize,
    w: usize,
) -> Result<PartitionPair> {
    check_open_ranges(params, p, r, s, v, w)?;
    let shifted = |top: usize, rr: usize, vv: usize| -> Vec<usize> {
        let mut c = vec![top - 1; p - rr - 1];
        c.push(top - vv - 1);
        c.extend(std::iter::repeat_n(1, rr));
        c
    };
    let c = shifted(params.a(), r, v);
    let d = shifted(params.b(), s, w);
    let n = c.iter().sum::<usize>() + d.iter().sum::<usize>() + 1;
    let lift = |shift: &[usize]| -> Result<Partition> {
        let size: usize = shift.iter().sum();
        let mut parts: Vec<usize> = shift.iter().map(|x| x + 1).collect();
        parts.extend(std::iter::repeat_n(1, n - size - shift.len()));
        Partition::new(parts)
    };
    PartitionPair::new(lift(&c)?, lift(&d)?, params)
}

/// `n^2 - p^2 - p - 1 - (a-v-2)(p-r)^2 - (b-w-2)(p-s)^2 - v(p-r-1)^2 - w(p-s-1)^2`.
pub fn open_orbit_dim_formula(
    n: usize,
    params: AlgebraParams,
    p: usize,
    r: usize,
    s: usize,
    v: usize,
    w: usize,
) -> Result<usize> {
    let pair = open_orbit_pair(params, p, r, s, v, w)?;
    if pair.n() != n {
        return Err(Error::Precondition(format!(
            "(p,r,s,v,w) = ({p},{r},{s},{v},{w}) gives n = {}",
            pair.n()
        )));
    }
    let sq = |x: usize| (x * x) as i64;
    let (a, b) = (params.a() as i64, params.b() as i64);
    let value = sq(n)
        - sq(p)
        - p as i64
        - 1
        - (a - v as i64 - 2) * sq(p - r)
        - (b - w as i64 - 2) * sq(p - s)
        - v as i64 * sq(p - r - 1)
        - w as i64 * sq(p - s - 1);
    usize::try_from(value).map_err(|_| Error::Precondition(format!("negative value {value}")))
}

/// `(c, d)` when `w = x^c y^d` with `c, d >= 1`.
pub fn diamond_exponents(w: &Word) -> Option<(usize, usize)> {
    let blocks = w.xy_blocks()?;
    match blocks.as_slice() {
        [(c, d)] if *c >= 1 && *d >= 1 && w.first() == Some(Letter::X) => Some((*c, *d)),
        _ => None,
    }
}
