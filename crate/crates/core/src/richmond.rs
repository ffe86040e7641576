//! Biserial index modules and the dimensions of the strata they label.
//!
//! A biserial module is a direct sum of string modules `M(x^i y^j)` with
//! `0 <= i <= a-1`, `0 <= j <= b-1`; `(0,0)` is the simple module and
//! `(a-1, b-1)` is `Λ` itself. Index modules are the biserial submodules of
//! `Λ^n` of dimension `n(d-1)`; the stratum of points whose image is `L` has
//! dimension `dim Hom(L, Λ^n) - dim End(L)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::classify::PartitionPair;
use crate::error::{Error, Result};
use crate::homalg::{end_dim_of_sum, hom_dim_graph};
use crate::modmatrix::{direct_sum, string_module, MatrixPairModule};
use crate::words::{AlgebraParams, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BiserialIndexModule {
    params: AlgebraParams,
    /// `(i, j) -> multiplicity of M(x^i y^j)`, zero entries removed.
    mult: BTreeMap<(usize, usize), usize>,
}

impl BiserialIndexModule {
    pub fn new(params: AlgebraParams) -> Self {
        BiserialIndexModule {
            params,
            mult: BTreeMap::new(),
        }
    }

    /// Builds from `(i, j, multiplicity)` triples; repeated summands add up.
    pub fn from_summands(params: AlgebraParams, summands: &[(usize, usize, usize)]) -> Result<Self> {
        let mut l = Self::new(params);
        for &(i, j, k) in summands {
            l.add(i, j, k)?;
        }
        Ok(l)
    }

    /// `Λ^k`.
    pub fn projective(params: AlgebraParams, k: usize) -> Self {
        let mut l = Self::new(params);
        l.add(params.a() - 1, params.b() - 1, k).expect("in range");
        l
    }

    pub fn add(&mut self, i: usize, j: usize, k: usize) -> Result<()> {
        if i >= self.params.a() || j >= self.params.b() {
            return Err(Error::Precondition(format!(
                "M(x^{i}y^{j}) is not a string over {}",
                self.params
            )));
        }
        if k > 0 {
            *self.mult.entry((i, j)).or_insert(0) += k;
        }
        Ok(())
    }

    fn remove(&mut self, i: usize, j: usize) -> Result<()> {
        match self.mult.get_mut(&(i, j)) {
            Some(k) if *k > 0 => {
                *k -= 1;
                if *k == 0 {
                    self.mult.remove(&(i, j));
                }
                Ok(())
            }
            _ => Err(Error::Precondition(format!("no summand M(x^{i}y^{j})"))),
        }
    }

    pub fn params(&self) -> AlgebraParams {
        self.params
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> usize {
        self.mult.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn m_s(&self) -> usize {
        self.multiplicity(0, 0)
    }

    pub fn m_x(&self, i: usize) -> usize {
        self.multiplicity(i, 0)
    }

    pub fn m_y(&self, j: usize) -> usize {
        self.multiplicity(0, j)
    }

    pub fn m_xy(&self, i: usize, j: usize) -> usize {
        if i == 0 || j == 0 {
            0
        } else {
            self.multiplicity(i, j)
        }
    }

    /// `((i, j), multiplicity)` in increasing `(i, j)` order.
    pub fn summands(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.mult.iter().map(|(&k, &v)| (k, v))
    }

    pub fn dim(&self) -> usize {
        self.summands().map(|((i, j), k)| k * (i + j + 1)).sum()
    }

    /// Number of indecomposable summands.
    pub fn summand_count(&self) -> usize {
        self.mult.values().sum()
    }

    /// Number of summands isomorphic to `Λ`.
    pub fn projective_count(&self) -> usize {
        self.multiplicity(self.params.a() - 1, self.params.b() - 1)
    }

    /// Whether this module embeds in `Λ^n` with dimension `n(d-1)`.
    pub fn is_index_module(&self, n: usize) -> bool {
        let (a, b) = (self.params.a(), self.params.b());
        let mut sum_x = 0;
        let mut sum_y = 0;
        let mut sum_xy = 0;
        for ((i, j), k) in self.summands() {
            match (i, j) {
                (0, 0) => {}
                (i, 0) => {
                    if i > a - 2 {
                        return false;
                    }
                    sum_x += k;
                }
                (0, j) => {
                    if j > b - 2 {
                        return false;
                    }
                    sum_y += k;
                }
                (i, j) => {
                    if (j == b - 1) != (i == a - 1) {
                        return false;
                    }
                    sum_xy += k;
                }
            }
        }
        n >= 1
            && sum_x + sum_xy <= n
            && sum_y + sum_xy <= n
            && self.m_s() + sum_x + sum_y + 2 * sum_xy <= 2 * n
            && self.dim() == n * (self.params.d() - 1)
    }

    fn require_index(&self, n: usize) -> Result<()> {
        if self.is_index_module(n) {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "{self:?} is not an index module for n = {n}"
            )))
        }
    }

    /// `dim Hom(L, Λ) = n(d-1) + m - p`.
    pub fn hom_to_proj_dim(&self, n: usize) -> Result<usize> {
        self.require_index(n)?;
        Ok(n * (self.params.d() - 1) + self.summand_count() - self.projective_count())
    }

    /// `dim Hom(L, Λ)` summed over the summands from graph-map counts.
    pub fn hom_to_proj_dim_graph(&self) -> usize {
        let lambda = Word::projective(self.params);
        self.summands()
            .map(|((i, j), k)| k * hom_dim_graph(&self.summand_word(i, j), &lambda))
            .sum()
    }

    fn summand_word(&self, i: usize, j: usize) -> Word {
        Word::x_y(self.params, i, j).expect("bounded exponents")
    }

    /// The distinct summands as string modules with their multiplicities.
    pub fn realization_summands(&self) -> Vec<(MatrixPairModule, usize)> {
        self.summands()
            .map(|((i, j), k)| (string_module(&self.summand_word(i, j)), k))
            .collect()
    }

    pub fn realization(&self) -> MatrixPairModule {
        let mods: Vec<MatrixPairModule> = self
            .realization_summands()
            .into_iter()
            .flat_map(|(m, k)| std::iter::repeat_n(m, k))
            .collect();
        direct_sum(self.params, &mods).expect("shared params")
    }

    /// `n dim Hom(L, Λ) - dim End(L)`.
    pub fn stratum_dim(&self, n: usize) -> Result<usize> {
        let hom = n * self.hom_to_proj_dim(n)?;
        Ok(hom - end_dim_of_sum(&self.realization_summands())?)
    }

    /// Replaces `M(x^i y^j) ⊕ M(x^p y^q)` (with `p <= i`, `q <= j`) by
    /// `M(x^i y^q) ⊕ M(x^p y^j)`.
    pub fn flip(&self, big: (usize, usize), small: (usize, usize)) -> Result<Self> {
        let ((i, j), (p, q)) = (big, small);
        if p > i || q > j {
            return Err(Error::Precondition(format!("flip needs ({p},{q}) <= ({i},{j})")));
        }
        let mut out = self.clone();
        out.remove(i, j)?;
        out.remove(p, q)?;
        out.add(i, q, 1)?;
        out.add(p, j, 1)?;
        Ok(out)
    }

    /// For `letter = x`: replaces `M(x^i y^j) ⊕ M(x^p y^q)` with `1 <= p <= i <= a-2`
    /// by `M(x^{i+1} y^j) ⊕ M(x^{p-1} y^q)`. The `y` version moves the `y`-exponents.
    pub fn box_move(&self, letter: Letter, first: (usize, usize), second: (usize, usize)) -> Result<Self> {
        let ((i, j), (p, q)) = (first, second);
        let mut out = self.clone();
        out.remove(i, j)?;
        out.remove(p, q)?;
        match letter {
            Letter::X => {
                if !(1 <= p && p <= i && i + 2 <= self.params.a()) {
                    return Err(Error::Precondition(format!("x box move needs 1 <= {p} <= {i} <= a-2")));
                }
                out.add(i + 1, j, 1)?;
                out.add(p - 1, q, 1)?;
            }
            Letter::Y => {
                if !(1 <= q && q <= j && j + 2 <= self.params.b()) {
                    return Err(Error::Precondition(format!("y box move needs 1 <= {q} <= {j} <= b-2")));
                }
                out.add(i, j + 1, 1)?;
                out.add(p, q - 1, 1)?;
            }
        }
        Ok(out)
    }

    /// Non-projective summands have exponents at most `(a-2, b-2)` and no
    /// two of them are strictly comparable in both exponents.
    pub fn is_flip_minimal(&self) -> bool {
        let (a, b) = (self.params.a(), self.params.b());
        let rest: Vec<(usize, usize)> = self
            .summands()
            .map(|(k, _)| k)
            .filter(|&(i, j)| (i, j) != (a - 1, b - 1))
            .collect();
        rest.iter().all(|&(i, j)| i + 2 <= a && j + 2 <= b)
            && rest.iter().all(|&(i, j)| rest.iter().all(|&(p, q)| !(p < i && q < j)))
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Record {
            a: usize,
            b: usize,
            m_s: usize,
            m_x: Vec<[usize; 2]>,
            m_y: Vec<[usize; 2]>,
            m_xy: Vec<[usize; 3]>,
        }
        let mut rec = Record {
            a: self.params.a(),
            b: self.params.b(),
            m_s: self.m_s(),
            m_x: Vec::new(),
            m_y: Vec::new(),
            m_xy: Vec::new(),
        };
        for ((i, j), k) in self.summands() {
            match (i, j) {
                (0, 0) => {}
                (i, 0) => rec.m_x.push([i, k]),
                (0, j) => rec.m_y.push([j, k]),
                (i, j) => rec.m_xy.push([i, j, k]),
            }
        }
        serde_json::to_value(rec).expect("plain data")
    }

    /// Summands as `M(x^2y)^3 ⊕ S`, largest first.
    pub fn label(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for ((i, j), k) in self.summands().collect::<Vec<_>>().into_iter().rev() {
            let name = if (i, j) == (0, 0) {
                "S".to_string()
            } else if (i, j) == (self.params.a() - 1, self.params.b() - 1) {
                "Λ".to_string()
            } else {
                format!("M({})", self.summand_word(i, j).caret())
            };
            parts.push(if k == 1 { name } else { format!("{name}^{k}") });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ⊕ ")
        }
    }
}

/// `Λ^{n-t} ⊕ ⊕_j M(x^{a-1-c_j} y^{b-1-d_{t-j+1}})` for a regular pair with
/// `a - 1 = (c_1..c_t)` and `b - 1 = (d_1..d_t)`.
pub fn index_of_regular_stratum(pair: &PartitionPair) -> Result<BiserialIndexModule> {
    if !pair.is_regular() {
        return Err(Error::Precondition(format!("{pair} is not regular")));
    }
    let params = pair.params();
    let (c, d) = (
        pair.a().minus_one_or_empty().parts().to_vec(),
        pair.b().minus_one_or_empty().parts().to_vec(),
    );
    let t = c.len();
    let mut l = BiserialIndexModule::projective(params, pair.n() - t);
    for j in 0..t {
        l.add(params.a() - 1 - c[j], params.b() - 1 - d[t - 1 - j], 1)?;
    }
    Ok(l)
}

/// `(L(a,b), P(a,b))` for pairs with `|a ∈ a|, |b ∈ b| >= 1`,
/// `l(a) + l(b) = n + 1` and `l(a-1) = l(b-1)`.
pub fn semiproj_index(pair: &PartitionPair) -> Result<(BiserialIndexModule, Word)> {
    let params = pair.params();
    let (pa, pb) = (pair.a(), pair.b());
    let n = pair.n();
    if pa.multiplicity(params.a()) == 0
        || pb.multiplicity(params.b()) == 0
        || pa.len() + pb.len() != n + 1
        || pa.len_minus_one() != pb.len_minus_one()
    {
        return Err(Error::Precondition(format!(
            "{pair} does not index a semi-projective stratum"
        )));
    }
    let (c, d) = (
        pa.minus_one_or_empty().parts().to_vec(),
        pb.minus_one_or_empty().parts().to_vec(),
    );
    let t = c.len();
    let mut letters = Vec::new();
    for i in 0..t {
        letters.extend(std::iter::repeat_n(Letter::X, c[i]));
        letters.extend(std::iter::repeat_n(Letter::Y, d[t - 1 - i]));
    }
    let word = Word::from_letters(params, letters)?;
    let mut l = BiserialIndexModule::projective(params, n - t);
    for i in 1..t {
        l.add(params.a() - c[i] - 1, params.b() - d[t - i] - 1, 1)?;
    }
    Ok((l, word))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::{hom_order_consistent, orbit_dim};
    use crate::partitions::Partition;
    use crate::words::all_strings;

    fn p33() -> AlgebraParams {
        AlgebraParams::new(3, 3).unwrap()
    }

    fn pair(a: &[usize], b: &[usize]) -> PartitionPair {
        PartitionPair::new(
            Partition::new(a.to_vec()).unwrap(),
            Partition::new(b.to_vec()).unwrap(),
            p33(),
        )
        .unwrap()
    }

    fn lambda_plus_xy() -> BiserialIndexModule {
        BiserialIndexModule::from_summands(p33(), &[(2, 2, 1), (1, 1, 1)]).unwrap()
    }

    #[test]
    fn index_module_examples() {
        let l = lambda_plus_xy();
        assert_eq!((l.m_xy(2, 2), l.m_xy(1, 1)), (1, 1));
        assert_eq!(l.dim(), 8);
        assert!(l.is_index_module(2));
        let x3 = BiserialIndexModule::from_summands(p33(), &[(1, 0, 3)]).unwrap();
        assert!(!x3.is_index_module(2));
        assert!(!BiserialIndexModule::projective(p33(), 2).is_index_module(2));
        assert!(BiserialIndexModule::from_summands(p33(), &[(3, 0, 1)]).is_err());
    }

    #[test]
    fn hom_to_proj_examples() {
        let l = lambda_plus_xy();
        assert_eq!(l.hom_to_proj_dim(2).unwrap(), 9);
        assert_eq!(l.hom_to_proj_dim_graph(), 9);
        let l4 = BiserialIndexModule::projective(p33(), 4);
        assert_eq!(l4.hom_to_proj_dim(5).unwrap(), 20);
        assert_eq!(l4.hom_to_proj_dim_graph(), 20);
        assert!(BiserialIndexModule::projective(p33(), 2).hom_to_proj_dim(2).is_err());
    }

    #[test]
    fn stratum_dim_examples() {
        assert_eq!(lambda_plus_xy().stratum_dim(2).unwrap(), 3);
        assert_eq!(BiserialIndexModule::projective(p33(), 4).stratum_dim(5).unwrap(), 20);
        let l = index_of_regular_stratum(&pair(&[2], &[2])).unwrap();
        assert_eq!(l, lambda_plus_xy());
        assert_eq!(l.stratum_dim(2).unwrap(), 3);
    }

    #[test]
    fn flip_examples() {
        let l = BiserialIndexModule::from_summands(p33(), &[(2, 2, 1), (1, 1, 1)]).unwrap();
        let f = l.flip((2, 2), (1, 1)).unwrap();
        assert_eq!(
            f,
            BiserialIndexModule::from_summands(p33(), &[(2, 1, 1), (1, 2, 1)]).unwrap()
        );
        assert_eq!(f.dim(), l.dim());
        assert_eq!(
            l.flip((2, 2), (2, 2)).unwrap_err(),
            Error::Precondition("no summand M(x^2y^2)".into())
        );
        let ll = BiserialIndexModule::from_summands(p33(), &[(2, 1, 2)]).unwrap();
        assert_eq!(ll.flip((2, 1), (2, 1)).unwrap(), ll);
        assert!(l.flip((1, 1), (2, 2)).is_err());
    }

    #[test]
    fn box_move_examples() {
        let l = BiserialIndexModule::from_summands(p33(), &[(1, 1, 2)]).unwrap();
        let moved = l.box_move(Letter::X, (1, 1), (1, 1)).unwrap();
        assert_eq!(
            moved,
            BiserialIndexModule::from_summands(p33(), &[(2, 1, 1), (0, 1, 1)]).unwrap()
        );
        assert_eq!(moved.dim(), l.dim());
        let at_edge = BiserialIndexModule::from_summands(p33(), &[(2, 1, 1), (1, 1, 1)]).unwrap();
        assert!(at_edge.box_move(Letter::X, (2, 1), (1, 1)).is_err());
        let y_moved = l.box_move(Letter::Y, (1, 1), (1, 1)).unwrap();
        assert_eq!(
            y_moved,
            BiserialIndexModule::from_summands(p33(), &[(1, 2, 1), (1, 0, 1)]).unwrap()
        );
    }

    #[test]
    fn flips_are_hom_order_consistent() {
        let tests: Vec<MatrixPairModule> = all_strings(p33(), 4).iter().map(string_module).collect();
        let l = BiserialIndexModule::from_summands(p33(), &[(2, 2, 2), (1, 1, 1), (0, 0, 1)]).unwrap();
        for (big, small) in [((2, 2), (1, 1)), ((2, 2), (0, 0)), ((1, 1), (0, 0))] {
            let f = l.flip(big, small).unwrap();
            assert!(hom_order_consistent(&f.realization(), &l.realization(), &tests).unwrap());
        }
    }

    #[test]
    fn regular_index_modules() {
        let l = index_of_regular_stratum(&pair(&[3, 1], &[3, 1])).unwrap();
        assert_eq!(
            l,
            BiserialIndexModule::from_summands(p33(), &[(2, 2, 3), (0, 0, 1)]).unwrap()
        );
        assert!(l.is_index_module(4));
        assert!(l.is_flip_minimal());
        assert!(index_of_regular_stratum(&pair(&[2, 1], &[1, 1, 1])).is_err());
    }

    #[test]
    fn semiprojective_index_examples() {
        let (l, p) = semiproj_index(&pair(&[3, 1, 1], &[3, 1, 1])).unwrap();
        assert_eq!(
            (l, p.plain()),
            (BiserialIndexModule::projective(p33(), 4), "xxyy".to_string())
        );

        let (l, p) = semiproj_index(&pair(&[3, 2, 1, 1], &[3, 2, 1, 1])).unwrap();
        assert_eq!(
            l,
            BiserialIndexModule::from_summands(p33(), &[(2, 2, 5), (1, 1, 1)]).unwrap()
        );
        assert_eq!(p.plain(), "xxyxyy");
        assert!(l.is_index_module(7));
        assert_eq!(orbit_dim(&string_module(&p)), l.stratum_dim(7).unwrap());

        assert!(semiproj_index(&pair(&[2, 2, 1], &[3, 2])).is_err());
    }

    #[test]
    fn json_and_labels() {
        let l = BiserialIndexModule::from_summands(p33(), &[(2, 2, 3), (0, 0, 1), (1, 0, 2), (1, 2, 1)]).unwrap();
        let json = l.to_json();
        assert_eq!(json["m_s"], 1);
        assert_eq!(json["m_x"], serde_json::json!([[1, 2]]));
        assert_eq!(json["m_xy"], serde_json::json!([[1, 2, 1], [2, 2, 3]]));
        assert_eq!(l.label(), "Λ^3 ⊕ M(xy^2) ⊕ M(x)^2 ⊕ S");
    }
}
