//! Homomorphism spaces between modules: the combinatorial basis of graph maps
//! for string modules, and a direct linear-algebra computation for arbitrary
//! matrix pairs. Orbit dimensions, projective covers and the vanishing test
//! for `Ext^1` between semi-projective string modules build on these.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactla::{rank_of_vectors, rat, sparse_kernel, sparse_rank, Rational, RationalMatrix, SparseRow};
use crate::modmatrix::{direct_sum, string_module, MatrixPairModule};
use crate::words::{admissible_pairs, SemiKind, Triple, Word};

/// The basis homomorphism `f_a : M(C1) -> M(C2)` attached to an admissible
/// pair `a = ((D1, E, F1), (D2, E, F2))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMap {
    pub source: Word,
    pub target: Word,
    pub factor: Triple,
    pub sub: Triple,
}

impl GraphMap {
    pub fn matrix(&self) -> RationalMatrix {
        graph_map_matrix(self)
    }
}

/// All graph maps from `M(c1)` to `M(c2)`.
pub fn graph_maps(c1: &Word, c2: &Word) -> Vec<GraphMap> {
    admissible_pairs(c1, c2)
        .into_iter()
        .map(|(factor, sub)| GraphMap {
            source: c1.clone(),
            target: c2.clone(),
            factor,
            sub,
        })
        .collect()
}

/// The 0/1 matrix sending `z_{|D1|+i}` to `z_{|D2|+i}` for `1 <= i <= |E|+1`.
pub fn graph_map_matrix(g: &GraphMap) -> RationalMatrix {
    let mut f = RationalMatrix::zeros(g.target.len() + 1, g.source.len() + 1);
    let (d1, d2) = (g.factor.d.len(), g.sub.d.len());
    for k in 0..=g.factor.e.len() {
        f.set(d2 + k, d1 + k, rat(1));
    }
    f
}

pub fn hom_dim_graph(c1: &Word, c2: &Word) -> usize {
    admissible_pairs(c1, c2).len()
}

/// The linear system `F A1 = A2 F`, `F B1 = B2 F` in the entries of the
/// `n2 x n1` matrix `F`, unknown `F[i][j]` at index `i * n1 + j`.
fn intertwiner_system(m1: &MatrixPairModule, m2: &MatrixPairModule) -> Vec<SparseRow> {
    let (n1, n2) = (m1.dim(), m2.dim());
    let mut rows = Vec::new();
    for (x1, x2) in [(m1.a(), m2.a()), (m1.b(), m2.b())] {
        let mut col_nz: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); n1];
        for (j, k, v) in x1.nonzeros() {
            col_nz[k].push((j, v));
        }
        let mut row_nz: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); n2];
        for (i, l, v) in x2.nonzeros() {
            row_nz[i].push((l, v));
        }
        for (i, row_i) in row_nz.iter().enumerate() {
            for (k, col_k) in col_nz.iter().enumerate() {
                let mut eq: BTreeMap<usize, Rational> = BTreeMap::new();
                for &(j, v) in col_k {
                    *eq.entry(i * n1 + j).or_insert_with(|| rat(0)) += v;
                }
                for &(l, v) in row_i {
                    *eq.entry(l * n1 + k).or_insert_with(|| rat(0)) -= v;
                }
                let row: SparseRow = eq.into_iter().filter(|(_, v)| *v != rat(0)).collect();
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

fn check_params(m1: &MatrixPairModule, m2: &MatrixPairModule) -> Result<()> {
    if m1.params() != m2.params() {
        return Err(Error::ParamsMismatch);
    }
    Ok(())
}

/// A basis of `Hom(M1, M2)` as `dim M2 x dim M1` matrices.
pub fn hom_basis_oracle(m1: &MatrixPairModule, m2: &MatrixPairModule) -> Result<Vec<RationalMatrix>> {
    check_params(m1, m2)?;
    let (n1, n2) = (m1.dim(), m2.dim());
    let kernel = sparse_kernel(&intertwiner_system(m1, m2), n1 * n2);
    Ok(kernel
        .into_iter()
        .map(|v| {
            let rows = v.chunks(n1.max(1)).take(n2).map(<[Rational]>::to_vec).collect();
            if n1 == 0 {
                RationalMatrix::zeros(n2, 0)
            } else {
                RationalMatrix::from_rows(rows).expect("rectangular")
            }
        })
        .collect())
}

pub fn hom_dim_oracle(m1: &MatrixPairModule, m2: &MatrixPairModule) -> Result<usize> {
    check_params(m1, m2)?;
    let unknowns = m1.dim() * m2.dim();
    Ok(unknowns - sparse_rank(&intertwiner_system(m1, m2), unknowns))
}

pub fn end_dim(m: &MatrixPairModule) -> usize {
    hom_dim_oracle(m, m).expect("same params")
}

/// `End` of `⊕ M_i^{k_i}` from the pairwise Hom dimensions of the summands.
pub fn end_dim_of_sum(summands: &[(MatrixPairModule, usize)]) -> Result<usize> {
    let mut total = 0;
    for (mi, ki) in summands {
        for (mj, kj) in summands {
            total += ki * kj * hom_dim_oracle(mi, mj)?;
        }
    }
    Ok(total)
}

pub fn orbit_dim(m: &MatrixPairModule) -> usize {
    m.dim() * m.dim() - end_dim(m)
}

/// Standard basis vectors completing `Im A + Im B` to the whole space.
fn top_basis(m: &MatrixPairModule) -> Vec<usize> {
    let n = m.dim();
    let mut span: Vec<Vec<Rational>> = Vec::new();
    for mat in [m.a(), m.b()] {
        for c in 0..n {
            span.push((0..n).map(|r| mat.get(r, c).clone()).collect());
        }
    }
    let mut current = rank_of_vectors(&span);
    let mut chosen = Vec::new();
    for k in 0..n {
        if current == n {
            break;
        }
        let mut e = vec![rat(0); n];
        e[k] = rat(1);
        span.push(e);
        let r = rank_of_vectors(&span);
        if r > current {
            current = r;
            chosen.push(k);
        } else {
            span.pop();
        }
    }
    chosen
}

/// `Λ^t -> M` with `t = dim top(M)`, each generator sent to a top vector.
pub fn projective_cover(m: &MatrixPairModule) -> Result<(MatrixPairModule, RationalMatrix)> {
    if !m.verify_relations() {
        return Err(Error::RelationsFail);
    }
    let params = m.params();
    let (a, b) = (params.a(), params.b());
    let d = params.d();
    let lambda = string_module(&Word::projective(params));
    let tops = top_basis(m);
    let cover = direct_sum(params, &vec![lambda; tops.len()])?;
    let n = m.dim();
    let mut pi = RationalMatrix::zeros(n, d * tops.len());
    for (j, &k) in tops.iter().enumerate() {
        let mut v = RationalMatrix::zeros(n, 1);
        v.set(k, 0, rat(1));
        // The generator of Λ is z_a; z_{a-i} = x^i z_a and z_{a+i} = y^i z_a.
        let mut xv = v.clone();
        for i in 0..a {
            for r in 0..n {
                pi.set(r, j * d + (a - 1 - i), xv.get(r, 0).clone());
            }
            xv = m.a().mul(&xv)?;
        }
        let mut yv = m.b().mul(&v)?;
        for i in 1..b {
            for r in 0..n {
                pi.set(r, j * d + (a - 1 + i), yv.get(r, 0).clone());
            }
            yv = m.b().mul(&yv)?;
        }
    }
    Ok((cover, pi))
}

fn columns(m: &RationalMatrix, start: usize, end: usize) -> RationalMatrix {
    let mut out = RationalMatrix::zeros(m.rows(), end - start);
    for r in 0..m.rows() {
        for c in start..end {
            out.set(r, c - start, m.get(r, c).clone());
        }
    }
    out
}

fn ext_preconditions(x: &Word, y: &Word) -> Result<()> {
    for w in [x, y] {
        if w.semi_kind() != SemiKind::SemiProjective {
            return Err(Error::Precondition(format!("{w} is not semi-projective")));
        }
    }
    if x.params() != y.params() {
        return Err(Error::ParamsMismatch);
    }
    Ok(())
}

/// Whether `Ext^1(M(X), M(Y)) = 0` for semi-projective strings, decided as
/// `Hom(M(τ⁻¹Y), M(X))` being spanned by maps through the projective cover of `M(X)`.
pub fn ext1_vanishes(x: &Word, y: &Word) -> Result<bool> {
    if x.is_projective() {
        return Ok(true);
    }
    ext_preconditions(x, y)?;
    let n = string_module(&y.tau_inverse()?);
    let m = string_module(x);
    let hom_dim = hom_dim_oracle(&n, &m)?;
    if hom_dim == 0 {
        return Ok(true);
    }
    let (_, pi) = projective_cover(&m)?;
    let d = x.params().d();
    let lambda = string_module(&Word::projective(x.params()));
    let to_lambda = hom_basis_oracle(&n, &lambda)?;
    let mut through: Vec<Vec<Rational>> = Vec::new();
    for j in 0..pi.cols() / d {
        let pj = columns(&pi, j * d, (j + 1) * d);
        for g in &to_lambda {
            through.push(pj.mul(g)?.vectorize());
        }
    }
    Ok(rank_of_vectors(&through) == hom_dim)
}

/// The same predicate checked basis map by basis map: every graph map
/// `M(τ⁻¹Y) -> M(X)` must be a composition of graph maps through `Λ`.
pub fn ext1_vanishes_graph(x: &Word, y: &Word) -> Result<bool> {
    if x.is_projective() {
        return Ok(true);
    }
    ext_preconditions(x, y)?;
    let source = y.tau_inverse()?;
    let lambda = Word::projective(x.params());
    let into: Vec<RationalMatrix> = graph_maps(&source, &lambda).iter().map(graph_map_matrix).collect();
    let out: Vec<RationalMatrix> = graph_maps(&lambda, x).iter().map(graph_map_matrix).collect();
    let composites: Vec<RationalMatrix> = out
        .iter()
        .flat_map(|h| into.iter().map(move |g| h.mul(g).expect("composable")))
        .filter(|f| !f.is_zero())
        .collect();
    Ok(graph_maps(&source, x)
        .iter()
        .all(|f| composites.contains(&graph_map_matrix(f))))
}

/// Necessary condition for `Y <=_deg X`: `dim Hom(Y, T) <= dim Hom(X, T)` for every test module.
pub fn hom_order_consistent(y: &MatrixPairModule, x: &MatrixPairModule, tests: &[MatrixPairModule]) -> Result<bool> {
    Ok(hom_order_witness(y, x, tests)?.is_none())
}

/// The index of the first test module refuting `Y <=_deg X`, if any.
pub fn hom_order_witness(
    y: &MatrixPairModule,
    x: &MatrixPairModule,
    tests: &[MatrixPairModule],
) -> Result<Option<usize>> {
    if y.dim() != x.dim() {
        return Err(Error::DimensionMismatch(format!("{} vs {}", y.dim(), x.dim())));
    }
    for (k, t) in tests.iter().enumerate() {
        if hom_dim_oracle(y, t)? > hom_dim_oracle(x, t)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modmatrix::band_module;
    use crate::words::{all_strings, AlgebraParams};

    fn p33() -> AlgebraParams {
        AlgebraParams::new(3, 3).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s, p33()).unwrap()
    }

    fn intertwines(f: &RationalMatrix, m1: &MatrixPairModule, m2: &MatrixPairModule) -> bool {
        f.mul(m1.a()).unwrap() == m2.a().mul(f).unwrap() && f.mul(m1.b()).unwrap() == m2.b().mul(f).unwrap()
    }

    fn find_map(c1: &str, c2: &str, fac: [&str; 3], sub: [&str; 3]) -> GraphMap {
        graph_maps(&w(c1), &w(c2))
            .into_iter()
            .find(|g| {
                [&g.factor.d, &g.factor.e, &g.factor.f].map(Word::plain) == fac.map(|s| if s == "1" { "" } else { s })
                    && [&g.sub.d, &g.sub.e, &g.sub.f].map(Word::plain) == sub.map(|s| if s == "1" { "" } else { s })
            })
            .expect("listed pair")
    }

    #[test]
    fn graph_map_matrices() {
        let id = find_map("xxy", "xxy", ["1", "xxy", "1"], ["1", "xxy", "1"]);
        assert_eq!(graph_map_matrix(&id), RationalMatrix::identity(4));

        let g = find_map("xxy", "xyxx", ["x", "x", "y"], ["xy", "x", "x"]);
        let f = graph_map_matrix(&g);
        assert_eq!(f.rank(), 2);
        assert_eq!(*f.get(2, 1), rat(1));
        assert_eq!(*f.get(3, 2), rat(1));

        let h = find_map("xxy", "xyxx", ["xx", "1", "y"], ["1", "1", "xyxx"]);
        let f = graph_map_matrix(&h);
        assert_eq!(f.rank(), 1);
        assert_eq!(*f.get(0, 2), rat(1));
    }

    #[test]
    fn graph_hom_dims() {
        assert_eq!(hom_dim_graph(&w("xxy"), &w("xyxx")), 5);
        assert_eq!(hom_dim_graph(&w(""), &w("")), 1);
        assert_eq!(hom_dim_graph(&w("xxyy"), &w("xxyy")), 5);
    }

    #[test]
    fn graph_maps_intertwine_and_are_independent() {
        let strings = all_strings(p33(), 4);
        for c1 in &strings {
            for c2 in &strings {
                let (m1, m2) = (string_module(c1), string_module(c2));
                let mats: Vec<RationalMatrix> = graph_maps(c1, c2).iter().map(graph_map_matrix).collect();
                for f in &mats {
                    assert!(intertwines(f, &m1, &m2), "{c1} -> {c2}");
                }
                let vecs: Vec<Vec<Rational>> = mats.iter().map(RationalMatrix::vectorize).collect();
                assert_eq!(rank_of_vectors(&vecs), mats.len());
            }
        }
    }

    #[test]
    fn oracle_agrees_on_short_strings() {
        let strings = all_strings(p33(), 4);
        for c1 in &strings {
            for c2 in &strings {
                let oracle = hom_dim_oracle(&string_module(c1), &string_module(c2)).unwrap();
                assert_eq!(oracle, hom_dim_graph(c1, c2), "{c1} -> {c2}");
            }
        }
    }

    #[test]
    fn oracle_basis_intertwines() {
        let m1 = string_module(&w("xxyxy"));
        let m2 = band_module(&w("xxy"), &[rat(2), rat(2)]).unwrap();
        for (s, t) in [(&m1, &m2), (&m2, &m1), (&m2, &m2)] {
            let basis = hom_basis_oracle(s, t).unwrap();
            assert_eq!(basis.len(), hom_dim_oracle(s, t).unwrap());
            for f in &basis {
                assert!(intertwines(f, s, t));
            }
        }
    }

    #[test]
    fn band_hom_spaces() {
        let b2 = band_module(&w("xxy"), &[rat(2)]).unwrap();
        let b3 = band_module(&w("xxy"), &[rat(3)]).unwrap();
        // M(xxy, λ) is the local module Λ/(y - λx²): every map is determined by
        // the image of the generator, and only the constant term sees λ.
        assert_eq!(hom_dim_oracle(&b2, &b3).unwrap(), 2);
        assert_eq!(hom_dim_oracle(&b2, &b2).unwrap(), 3);
        // A one-parameter family of 3-dimensional orbits of dimension 9 - 3.
        assert_eq!(orbit_dim(&b2) + 1, 7);
        let xy = band_module(&w("xy"), &[rat(2)]).unwrap();
        assert_eq!(end_dim(&xy), 2);
        assert_eq!(orbit_dim(&xy) + 1, 3);
        assert_eq!(
            hom_dim_oracle(&xy, &band_module(&w("xy"), &[rat(3)]).unwrap()).unwrap(),
            1
        );
        let other = string_module(&Word::parse("xy", AlgebraParams::new(2, 2).unwrap()).unwrap());
        assert_eq!(hom_dim_oracle(&b2, &other), Err(Error::ParamsMismatch));
    }

    #[test]
    fn end_and_orbit_dims() {
        let m = string_module(&w("xxyy"));
        assert_eq!(end_dim(&m), 5);
        assert_eq!(orbit_dim(&m), 20);
        assert_eq!(end_dim(&string_module(&w(""))), 1);
        assert_eq!(orbit_dim(&string_module(&w(""))), 0);
        let mm = direct_sum(p33(), &[m.clone(), m.clone()]).unwrap();
        assert_eq!(end_dim(&mm), 20);
        assert_eq!(orbit_dim(&mm), 80);
        assert_eq!(end_dim_of_sum(&[(m, 2)]).unwrap(), 20);
        assert_eq!(orbit_dim(&string_module(&w("xxyxyy"))), 40);
    }

    #[test]
    fn end_dim_is_additive_with_cross_terms() {
        let pieces = [
            string_module(&w("xxy")),
            string_module(&w("yxy")),
            band_module(&w("xy"), &[rat(5)]).unwrap(),
        ];
        for m in &pieces {
            for n in &pieces {
                let sum = direct_sum(p33(), &[m.clone(), n.clone()]).unwrap();
                let expected = end_dim(m) + end_dim(n) + hom_dim_oracle(m, n).unwrap() + hom_dim_oracle(n, m).unwrap();
                assert_eq!(end_dim(&sum), expected);
            }
        }
    }

    #[test]
    fn projective_covers() {
        let lambda = string_module(&Word::projective(p33()));
        let (cover, pi) = projective_cover(&lambda).unwrap();
        assert_eq!(cover, lambda);
        assert_eq!(pi, RationalMatrix::identity(5));

        let s = string_module(&w(""));
        let (cover, pi) = projective_cover(&s).unwrap();
        assert_eq!(cover.dim(), 5);
        assert_eq!(pi.rank(), 1);
        assert!(intertwines(&pi, &cover, &s));

        for text in ["xxyy", "yxxy", "xyxyx", "yy"] {
            let m = string_module(&w(text));
            let (cover, pi) = projective_cover(&m).unwrap();
            assert_eq!(cover.dim(), 5 * m.stats().unwrap().top_dim);
            assert_eq!(pi.rank(), m.dim());
            assert!(intertwines(&pi, &cover, &m));
        }
        let (cover, pi) = projective_cover(&string_module(&w("xxyy"))).unwrap();
        assert_eq!((cover.dim(), pi.rank()), (5, 5));
    }

    #[test]
    fn ext_examples() {
        let lambda = Word::projective(p33());
        for d in ["xxyy", "xxyxyy", "xxyxyxyy"] {
            assert!(ext1_vanishes(&lambda, &w(d)).unwrap());
        }
        assert!(ext1_vanishes(&w("xxyy"), &w("xxyy")).unwrap());
        assert!(!ext1_vanishes(&w("xxyxyxyy"), &w("xxyxyxyy")).unwrap());
        assert!(ext1_vanishes(&w("xy"), &w("xxyy")).is_err());
    }

    #[test]
    fn ext_routes_agree_on_short_semiprojectives() {
        let sp: Vec<Word> = all_strings(p33(), 7)
            .into_iter()
            .filter(|c| c.semi_kind() == SemiKind::SemiProjective)
            .collect();
        for x in &sp {
            for y in &sp {
                assert_eq!(
                    ext1_vanishes(x, y).unwrap(),
                    ext1_vanishes_graph(x, y).unwrap(),
                    "{x}, {y}"
                );
            }
        }
    }

    #[test]
    fn flip_instance_is_hom_consistent() {
        let y = direct_sum(p33(), &[string_module(&w("xxy")), string_module(&w("xyy"))]).unwrap();
        let x = direct_sum(p33(), &[string_module(&w("xxyy")), string_module(&w("xy"))]).unwrap();
        let tests: Vec<MatrixPairModule> = all_strings(p33(), 4).iter().map(string_module).collect();
        assert!(hom_order_consistent(&y, &x, &tests).unwrap());
        assert!(!hom_order_consistent(&x, &y, &tests).unwrap());
        assert!(hom_order_consistent(&x, &x, &tests).unwrap());
        assert!(hom_order_consistent(&x, &string_module(&w("xy")), &tests).is_err());
    }
}
