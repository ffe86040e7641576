//! Points of V(n, a, b): pairs of matrices `(A, B)` with `AB = BA = A^a = B^b = 0`,
//! read as modules over `K[x,y]/(xy, x^a, y^b)` with `x` acting by `A` and `y` by `B`.
//!
//! Matrices act on coordinate columns and basis vectors are numbered as the
//! letters of the word they come from.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{format_rational, parse_rational, rank, rat, Rational, RationalMatrix};
use crate::partitions::Partition;
use crate::words::{AlgebraParams, BandClass, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixPairModule {
    params: AlgebraParams,
    a: RationalMatrix,
    b: RationalMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ModuleStats {
    pub rk_a: usize,
    pub rk_b: usize,
    pub top_dim: usize,
    pub soc_dim: usize,
    pub regular: bool,
}

impl MatrixPairModule {
    /// Wraps two square matrices of equal size. The relations are not checked here.
    pub fn new(params: AlgebraParams, a: RationalMatrix, b: RationalMatrix) -> Result<Self> {
        if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
            return Err(Error::DimensionMismatch(format!(
                "A is {}x{}, B is {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        Ok(MatrixPairModule { params, a, b })
    }

    pub fn zero(params: AlgebraParams, n: usize) -> Self {
        MatrixPairModule {
            params,
            a: RationalMatrix::zeros(n, n),
            b: RationalMatrix::zeros(n, n),
        }
    }

    pub fn params(&self) -> AlgebraParams {
        self.params
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    /// The matrix of `x`.
    pub fn a(&self) -> &RationalMatrix {
        &self.a
    }

    /// The matrix of `y`.
    pub fn b(&self) -> &RationalMatrix {
        &self.b
    }

    pub fn verify_relations(&self) -> bool {
        let n = self.dim();
        let zero = RationalMatrix::zeros(n, n);
        let ab = self.a.mul(&self.b).expect("square");
        let ba = self.b.mul(&self.a).expect("square");
        ab == zero
            && ba == zero
            && self.a.pow(self.params.a()).expect("square") == zero
            && self.b.pow(self.params.b()).expect("square") == zero
    }

    fn require_relations(&self) -> Result<()> {
        if self.verify_relations() {
            Ok(())
        } else {
            Err(Error::RelationsFail)
        }
    }

    /// Jordan types `(p(A), p(B))`.
    pub fn jordan_pair(&self) -> Result<(Partition, Partition)> {
        self.require_relations()?;
        Ok((nilpotent_jordan_type(&self.a), nilpotent_jordan_type(&self.b)))
    }

    pub fn stats(&self) -> Result<ModuleStats> {
        self.require_relations()?;
        let n = self.dim();
        let rk_a = rank(&self.a);
        let rk_b = rank(&self.b);
        let top_dim = n - rank(&self.a.hstack(&self.b)?);
        let soc_dim = n - rank(&self.a.vstack(&self.b)?);
        Ok(ModuleStats {
            rk_a,
            rk_b,
            top_dim,
            soc_dim,
            regular: rk_a + rk_b == n,
        })
    }

    /// The transposed pair, realizing the standard duality.
    pub fn dual_point(&self) -> MatrixPairModule {
        MatrixPairModule {
            params: self.params,
            a: self.a.transpose(),
            b: self.b.transpose(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ModuleJson::from(self)).expect("plain data")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let raw: ModuleJson = serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        raw.try_into()
    }
}

/// Jordan type of a nilpotent matrix from the kernel dimensions of its powers.
pub fn nilpotent_jordan_type(m: &RationalMatrix) -> Partition {
    let n = m.rows();
    // dual[k] = number of blocks of size > k = rk(M^k) - rk(M^{k+1}).
    let mut dual = Vec::new();
    let mut power = RationalMatrix::identity(n);
    let mut prev_rank = n;
    while prev_rank > 0 {
        power = power.mul(m).expect("square");
        let r = rank(&power);
        if r == prev_rank {
            // Not nilpotent; cannot happen for points of the variety.
            break;
        }
        dual.push(prev_rank - r);
        prev_rank = r;
    }
    Partition::new(dual).expect("rank drops are non-increasing").dual()
}

/// The string module `M(C)` on basis `z_1, ..., z_{|C|+1}`.
pub fn string_module(word: &Word) -> MatrixPairModule {
    let n = word.len() + 1;
    let mut a = RationalMatrix::zeros(n, n);
    let mut b = RationalMatrix::zeros(n, n);
    for (i, letter) in word.letters().iter().enumerate() {
        // Letter c_{i+1} joins z_{i+1} and z_{i+2} (zero-based i and i+1).
        match letter {
            Letter::X => a.set(i, i + 1, rat(1)),
            Letter::Y => b.set(i + 1, i, rat(1)),
        }
    }
    MatrixPairModule {
        params: word.params(),
        a,
        b,
    }
}

/// The band module `M(B, λ_1, ..., λ_k)` of dimension `|B| k`. Layer `j`
/// closes the cycle with scalar `λ_j` and feeds into layer `j - 1`.
pub fn band_module(band: &Word, lambdas: &[Rational]) -> Result<MatrixPairModule> {
    if band.is_empty() || band.band_class()? == BandClass::NotBand {
        return Err(Error::InvalidWord(format!("{band} is not a band")));
    }
    if lambdas.iter().any(|l| *l == rat(0)) {
        return Err(Error::Precondition("band parameters must be nonzero".into()));
    }
    let m = band.len();
    let n = m * lambdas.len();
    let mut a = RationalMatrix::zeros(n, n);
    let mut b = RationalMatrix::zeros(n, n);
    let letters = band.letters();
    for (j, lambda) in lambdas.iter().enumerate() {
        let z = |i: usize| j * m + i;
        for (i, letter) in letters.iter().enumerate().take(m - 1) {
            match letter {
                Letter::X => a.set(z(i), z(i + 1), rat(1)),
                Letter::Y => b.set(z(i + 1), z(i), rat(1)),
            }
        }
        let (first, last) = (z(0), z(m - 1));
        match letters[m - 1] {
            Letter::Y => {
                b.set(first, last, lambda.clone());
                if j > 0 {
                    b.set(first - m, last, rat(1));
                }
            }
            Letter::X => {
                a.set(last, first, lambda.clone());
                if j > 0 {
                    a.set(last - m, first, rat(1));
                }
            }
        }
    }
    Ok(MatrixPairModule {
        params: band.params(),
        a,
        b,
    })
}

/// Block-diagonal sum. An empty list gives the zero-dimensional module.
pub fn direct_sum(params: AlgebraParams, mods: &[MatrixPairModule]) -> Result<MatrixPairModule> {
    if mods.iter().any(|m| m.params != params) {
        return Err(Error::ParamsMismatch);
    }
    let a_blocks: Vec<&RationalMatrix> = mods.iter().map(|m| &m.a).collect();
    let b_blocks: Vec<&RationalMatrix> = mods.iter().map(|m| &m.b).collect();
    Ok(MatrixPairModule {
        params,
        a: RationalMatrix::block_diagonal(&a_blocks),
        b: RationalMatrix::block_diagonal(&b_blocks),
    })
}

#[derive(Serialize, Deserialize)]
struct ModuleJson {
    #[serde(rename = "n")]
    n: usize,
    #[serde(rename = "a")]
    param_a: usize,
    #[serde(rename = "b")]
    param_b: usize,
    #[serde(rename = "A")]
    mat_a: Vec<Vec<String>>,
    #[serde(rename = "B")]
    mat_b: Vec<Vec<String>>,
}

fn matrix_to_strings(m: &RationalMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(format_rational).collect())
        .collect()
}

fn matrix_from_strings(rows: &[Vec<String>], n: usize) -> Result<RationalMatrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(format!("expected a {n}x{n} matrix")));
    }
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if n == 0 {
        return Ok(RationalMatrix::zeros(0, 0));
    }
    RationalMatrix::from_rows(parsed)
}

impl From<&MatrixPairModule> for ModuleJson {
    fn from(m: &MatrixPairModule) -> Self {
        ModuleJson {
            n: m.dim(),
            param_a: m.params.a(),
            param_b: m.params.b(),
            mat_a: matrix_to_strings(&m.a),
            mat_b: matrix_to_strings(&m.b),
        }
    }
}

impl TryFrom<ModuleJson> for MatrixPairModule {
    type Error = Error;

    fn try_from(raw: ModuleJson) -> Result<Self> {
        let params = AlgebraParams::new(raw.param_a, raw.param_b)?;
        let a = matrix_from_strings(&raw.mat_a, raw.n)?;
        let b = matrix_from_strings(&raw.mat_b, raw.n)?;
        MatrixPairModule::new(params, a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat_frac;

    fn p33() -> AlgebraParams {
        AlgebraParams::new(3, 3).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s, p33()).unwrap()
    }

    fn part(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn simple_module() {
        let s = string_module(&w(""));
        assert_eq!(s.dim(), 1);
        assert!(s.a().is_zero() && s.b().is_zero());
        let st = s.stats().unwrap();
        assert_eq!(
            (st.rk_a, st.rk_b, st.top_dim, st.soc_dim, st.regular),
            (0, 0, 1, 1, false)
        );
    }

    #[test]
    fn string_jordan_pairs() {
        assert_eq!(
            string_module(&w("xxy")).jordan_pair().unwrap(),
            (part(&[3, 1]), part(&[2, 1, 1]))
        );
        assert_eq!(
            string_module(&w("xxyxy")).jordan_pair().unwrap(),
            (part(&[3, 2, 1]), part(&[2, 2, 1, 1]))
        );
        assert_eq!(
            string_module(&w("yy")).jordan_pair().unwrap(),
            (part(&[1, 1, 1]), part(&[3]))
        );
        let zero = MatrixPairModule::zero(p33(), 2);
        assert_eq!(zero.jordan_pair().unwrap(), (part(&[1, 1]), part(&[1, 1])));
    }

    #[test]
    fn string_stats() {
        let st = string_module(&w("xxy")).stats().unwrap();
        assert_eq!(
            (st.rk_a, st.rk_b, st.top_dim, st.soc_dim, st.regular),
            (2, 1, 1, 2, false)
        );
    }

    #[test]
    fn band_examples() {
        let m = band_module(&w("xxy"), &[rat(2)]).unwrap();
        assert_eq!(m.dim(), 3);
        assert!(m.verify_relations());
        assert_eq!(m.jordan_pair().unwrap(), (part(&[3]), part(&[2, 1])));
        assert!(m.stats().unwrap().regular);

        let d = band_module(&w("xxyy"), &[rat(1)]).unwrap();
        assert_eq!(d.jordan_pair().unwrap(), (part(&[3, 1]), part(&[3, 1])));
        let st = d.stats().unwrap();
        assert_eq!(
            (st.rk_a, st.rk_b, st.top_dim, st.soc_dim, st.regular),
            (2, 2, 1, 1, true)
        );

        assert!(band_module(&w("xx"), &[rat(1)]).is_err());
        assert!(band_module(&w("xxy"), &[rat(0)]).is_err());
    }

    #[test]
    fn multi_layer_bands_satisfy_relations() {
        for band in ["xy", "xxy", "xyy", "xxyy", "xxyxy", "yxxy"] {
            for lambdas in [
                vec![rat(2), rat(2), rat(2)],
                vec![rat(2), rat(3)],
                vec![rat_frac(-1, 2)],
            ] {
                let m = band_module(&w(band), &lambdas).unwrap();
                assert!(m.verify_relations(), "{band} {lambdas:?}");
                assert!(m.stats().unwrap().regular);
            }
        }
    }

    #[test]
    fn relations_detect_violations() {
        let p22 = AlgebraParams::new(2, 2).unwrap();
        let jordan3 = RationalMatrix::from_ints(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let m = MatrixPairModule::new(p22, jordan3, RationalMatrix::zeros(3, 3)).unwrap();
        assert!(!m.verify_relations());
        assert_eq!(m.jordan_pair(), Err(Error::RelationsFail));
        assert!(MatrixPairModule::zero(p22, 3).verify_relations());
    }

    #[test]
    fn direct_sums() {
        let s = string_module(&w(""));
        let ss = direct_sum(p33(), &[s.clone(), s]).unwrap();
        assert_eq!(ss, MatrixPairModule::zero(p33(), 2));
        let m = direct_sum(p33(), &[string_module(&w("xxy")), string_module(&w("xy"))]).unwrap();
        assert_eq!(m.dim(), 7);
        assert!(m.verify_relations());
        assert_eq!(direct_sum(p33(), &[]).unwrap().dim(), 0);
        let other = string_module(&Word::parse("xy", AlgebraParams::new(2, 2).unwrap()).unwrap());
        assert_eq!(direct_sum(p33(), &[other]), Err(Error::ParamsMismatch));
    }

    #[test]
    fn duality() {
        let m = string_module(&w("xxy"));
        let d = m.dual_point();
        let mirror = string_module(&w("yxx"));
        assert_eq!(d.jordan_pair().unwrap(), mirror.jordan_pair().unwrap());
        assert_eq!(d.dual_point(), m);
        let (sm, sd) = (m.stats().unwrap(), d.stats().unwrap());
        assert_eq!((sm.top_dim, sm.soc_dim), (sd.soc_dim, sd.top_dim));
        let zero = MatrixPairModule::zero(p33(), 3);
        assert_eq!(zero.dual_point(), zero);
    }

    #[test]
    fn json_round_trip() {
        let m = band_module(&w("xxyy"), &[rat_frac(-7, 3), rat_frac(-7, 3)]).unwrap();
        let json = m.to_json();
        assert_eq!(json["n"], 8);
        assert_eq!(json["B"][0][3], "-7/3");
        assert_eq!(json["B"][0][7], "1/1");
        assert_eq!(json["A"][0][0], "0/1");
        assert_eq!(MatrixPairModule::from_json(&json).unwrap(), m);
        let text = serde_json::to_string(&json).unwrap();
        let back: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(MatrixPairModule::from_json(&back).unwrap(), m);
        let empty = direct_sum(p33(), &[]).unwrap();
        assert_eq!(MatrixPairModule::from_json(&empty.to_json()).unwrap(), empty);
    }
}
