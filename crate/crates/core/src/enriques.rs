//! Primitive embeddings into Λ⁻, exceptional lattices and the Enriques cover test.

use crate::classifier::{is_idoneal, ClassifyOptions, IdonealVerdict};
use crate::error::{Error, Result};
use crate::genus::{genus_of, GenusSymbol};
use crate::lattice::IntLattice;
use crate::seed::seed_lattice;
use crate::torsion::{check_b, check_c, exists_even_lattice, Block, TorsionForm};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Case {
    A,
    B,
    C,
}

/// One row of the embedding table: q(T) ≅ m·u₁ ⊕ q and q(T⊥) ≅ k·u₁ ⊕ q(−1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EmbeddingRow {
    pub lambda: usize,
    /// None only for the single row at λ = 12.
    pub case: Option<Case>,
    pub m: usize,
    pub k: usize,
    /// ℓ₂ of the residual form q.
    pub l2: usize,
    /// Condition B(s, 0) on q.
    pub b: Option<usize>,
    /// Condition C(s) on q.
    pub c: Option<usize>,
    pub even: bool,
}

impl EmbeddingRow {
    pub fn name(&self) -> String {
        match self.case {
            None => self.lambda.to_string(),
            Some(c) => format!("{}{}", self.lambda, ['a', 'b', 'c'][c as usize]),
        }
    }

    /// Condition of the cover theorem that this row corresponds to.
    pub fn condition(&self) -> &'static str {
        let case = self.case.unwrap_or(Case::A);
        match (self.lambda, case) {
            (2..=6, _) => "(i)",
            (7, Case::A) => "(ii)",
            (7, _) => "(iii)",
            (8, Case::A) => "(iv)",
            (8, _) => "(v)",
            (9, Case::A) => "(vi)",
            (9, _) => "(vii)",
            (10, Case::A) => "(viii)",
            (10, _) => "(ix)",
            (11, Case::A) => "(x)",
            (11, _) => "(xi)",
            _ => "(xii)",
        }
    }

    fn check(&self, q: &TorsionForm) -> bool {
        if q.ell_p(2) != self.l2 {
            return false;
        }
        if self.lambda == 12 && !q.is_trivial() {
            return false;
        }
        self.b.is_none_or(|s| check_b(q, s, 0))
            && self.c.is_none_or(|s| check_c(q, s))
            && (!self.even || q.is_even())
    }
}

const fn row(
    lambda: usize,
    case: Case,
    m: usize,
    k: usize,
    l2: usize,
    b: Option<usize>,
    c: Option<usize>,
    even: bool,
) -> EmbeddingRow {
    EmbeddingRow { lambda, case: Some(case), m, k, l2, b, c, even }
}

use Case::{A, B, C};

static EMBEDDING_ROWS: [EmbeddingRow; 30] = [
    row(2, A, 0, 5, 0, None, Some(0), false),
    row(2, B, 0, 4, 2, None, None, false),
    row(2, C, 0, 3, 2, None, None, true),
    row(3, A, 0, 4, 1, None, Some(1), true),
    row(3, B, 0, 3, 3, None, None, false),
    row(3, C, 0, 2, 3, None, None, true),
    row(4, A, 0, 3, 2, None, Some(2), true),
    row(4, B, 0, 2, 4, None, None, false),
    row(4, C, 0, 1, 4, None, None, true),
    row(5, A, 0, 2, 3, None, Some(3), true),
    row(5, B, 0, 1, 5, None, None, false),
    row(5, C, 0, 0, 5, None, None, true),
    row(6, A, 0, 1, 4, None, Some(4), true),
    row(6, B, 0, 0, 6, None, None, false),
    row(6, C, 1, 0, 4, None, None, true),
    row(7, A, 0, 0, 5, Some(5), Some(5), true),
    row(7, B, 1, 0, 5, Some(5), None, false),
    row(7, C, 2, 0, 3, Some(5), None, true),
    row(8, A, 1, 0, 4, Some(4), Some(4), true),
    row(8, B, 2, 0, 4, Some(4), None, false),
    row(8, C, 3, 0, 2, Some(4), None, true),
    row(9, A, 2, 0, 3, Some(3), Some(3), true),
    row(9, B, 3, 0, 3, Some(3), None, false),
    row(9, C, 4, 0, 1, Some(3), None, true),
    row(10, A, 3, 0, 2, Some(2), Some(2), true),
    row(10, B, 4, 0, 2, Some(2), None, false),
    row(10, C, 5, 0, 0, Some(2), None, false),
    row(11, A, 4, 0, 1, Some(1), Some(1), true),
    row(11, B, 5, 0, 1, Some(1), None, false),
    EmbeddingRow { lambda: 12, case: None, m: 5, k: 0, l2: 0, b: None, c: None, even: false },
];

/// Rows of the embedding table for rank λ.
pub fn embedding_rows(lambda: usize) -> Result<Vec<EmbeddingRow>> {
    if !(2..=12).contains(&lambda) {
        return Err(Error::InvalidArgument(format!("rank {lambda} outside 2..=12")));
    }
    Ok(EMBEDDING_ROWS.iter().copied().filter(|r| r.lambda == lambda).collect())
}

// ---------------------------------------------------------------------------
// splitting off copies of u₁

/// Per level, the 2-adic forms on (ℤ/2^k)^n up to the relation w³ ~ w ⊕ (u or v).
fn level_forms(k: u32, n: usize) -> Vec<Vec<Block>> {
    let mut out = Vec::new();
    let units = [1, 3, 5, 7];
    let mut ws: Vec<Vec<i32>> = vec![vec![]];
    for &a in &units {
        ws.push(vec![a]);
        for &b in units.iter().filter(|&&b| b >= a) {
            ws.push(vec![a, b]);
        }
    }
    for w in ws {
        if w.len() > n || (n - w.len()) % 2 == 1 {
            continue;
        }
        let pairs = (n - w.len()) / 2;
        for nv in 0..=pairs.min(1) {
            let mut bs: Vec<Block> = w.iter().map(|&e| Block::W(2, k, e)).collect();
            bs.extend(std::iter::repeat_n(Block::V(k), nv));
            bs.extend(std::iter::repeat_n(Block::U(k), pairs - nv));
            out.push(bs);
        }
    }
    out
}

/// A form q with q(T) ≅ m·u₁ ⊕ q, unique up to isomorphism when it exists.
pub fn split_u1(form: &TorsionForm, m: usize) -> Option<TorsionForm> {
    if m == 0 {
        return Some(form.clone());
    }
    let mut ranks: BTreeMap<u32, usize> = BTreeMap::new();
    let mut rest = Vec::new();
    for b in form.blocks() {
        match *b {
            Block::U(k) | Block::V(k) => *ranks.entry(k).or_default() += 2,
            Block::W(2, k, _) => *ranks.entry(k).or_default() += 1,
            other => rest.push(other),
        }
    }
    let n1 = ranks.entry(1).or_default();
    if *n1 < 2 * m {
        return None;
    }
    *n1 -= 2 * m;
    let options: Vec<Vec<Vec<Block>>> = ranks.iter().map(|(&k, &n)| level_forms(k, n)).collect();
    let target = form.normal_form();
    let mut idx = vec![0usize; options.len()];
    loop {
        let mut blocks = rest.clone();
        for (l, &i) in idx.iter().enumerate() {
            blocks.extend(options[l][i].iter().copied());
        }
        let q = TorsionForm::from_blocks(blocks).expect("valid blocks");
        if TorsionForm::u(1).times(m).sum(&q).normal_form() == target {
            return Some(q.normal_form());
        }
        let mut pos = options.len();
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < options[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

// ---------------------------------------------------------------------------
// embeddings

#[derive(Clone, Debug)]
pub struct RowMatch {
    pub row: EmbeddingRow,
    /// Residual q with q(T) ≅ m·u₁ ⊕ q.
    pub residual: TorsionForm,
    /// Discriminant form of the orthogonal complement.
    pub complement: TorsionForm,
}

#[derive(Clone, Debug)]
pub struct EmbeddingReport {
    pub lambda: usize,
    pub form: TorsionForm,
    pub matches: Vec<RowMatch>,
}

impl EmbeddingReport {
    pub fn embeds(&self) -> bool {
        !self.matches.is_empty()
    }
}

fn check_signature(t: &IntLattice) -> Result<usize> {
    if !t.is_even() {
        return Err(Error::NotEven);
    }
    let (sp, sm) = t.signature();
    if sp != 2 {
        return Err(Error::Signature(format!("expected (2, λ-2), got ({sp}, {sm})")));
    }
    Ok(sp + sm)
}

fn match_rows(lambda: usize, form: &TorsionForm) -> Vec<RowMatch> {
    let rows = embedding_rows(lambda).unwrap_or_default();
    let mut out = Vec::new();
    for r in rows {
        let Some(q) = split_u1(form, r.m) else { continue };
        if r.check(&q) {
            let complement = TorsionForm::u(1).times(r.k).sum(&q.negate()).normal_form();
            out.push(RowMatch { row: r, residual: q, complement });
        }
    }
    out
}

/// Primitive embeddings of an even lattice of signature (2, λ−2) into Λ⁻, row by row.
pub fn embeds_in_lminus(t: &IntLattice) -> Result<EmbeddingReport> {
    let lambda = check_signature(t)?;
    let form = TorsionForm::of_even_lattice(t).normal_form();
    let matches = if (2..=12).contains(&lambda) { match_rows(lambda, &form) } else { Vec::new() };
    Ok(EmbeddingReport { lambda, form, matches })
}

// ---------------------------------------------------------------------------
// exceptional lattices

#[derive(Clone, Debug)]
pub struct ExceptionalRecord {
    pub lambda: usize,
    /// Odd lattice T′ with T = T′(2).
    pub half: IntLattice,
    pub lattice: IntLattice,
    pub form: TorsionForm,
    /// Genus of L with T⊥ ≅ L(−2); it is idoneal.
    pub idoneal: GenusSymbol,
    pub row: EmbeddingRow,
}

/// Genus of T for a complement L(−2) with L in g, via the case-b rows.
fn exceptional_from(lambda: usize, g: &GenusSymbol) -> Result<Option<(GenusSymbol, TorsionForm, EmbeddingRow)>> {
    let l2 = g.rescale_two(true).expect("rescaling up always works");
    let x = l2.discriminant_form().ok_or(Error::NotEven)?.negate().normal_form();
    for r in embedding_rows(lambda)?.into_iter().filter(|r| r.case == Some(Case::B)) {
        let Some(qm) = split_u1(&x, r.k) else { continue };
        let q = qm.negate();
        if !r.check(&q) {
            continue;
        }
        let y = TorsionForm::u(1).times(r.m).sum(&q).normal_form();
        if !y.is_odd() || !exists_even_lattice(&y, 2, lambda - 2) {
            continue;
        }
        let Some(tg) = GenusSymbol::from_discriminant_form(&y, 2, lambda - 2) else { continue };
        return Ok(Some((tg, y, r)));
    }
    Ok(None)
}

/// Exceptional lattices of rank λ from the idoneal genera of rank 12 − λ.
///
/// Every exceptional lattice is unique in its genus, so one lattice per
/// genus is produced.
pub fn enumerate_exceptional(lambda: usize, idoneal: &[GenusSymbol]) -> Result<Vec<ExceptionalRecord>> {
    embedding_rows(lambda)?;
    let recs: Vec<Result<Option<ExceptionalRecord>>> = idoneal
        .par_iter()
        .map(|g| {
            if g.rank() + lambda != 12 {
                return Err(Error::InvalidArgument(format!("genus {g} has rank {}, expected {}", g.rank(), 12 - lambda)));
            }
            let Some((tg, form, row)) = exceptional_from(lambda, g)? else { return Ok(None) };
            let hg = tg.rescale_two(false).ok_or_else(|| Error::InvalidArgument(format!("genus {tg} is not a rescaling")))?;
            let half = seed_lattice(&hg).ok_or_else(|| Error::NoSeed(hg.to_string()))?;
            let lattice = half.rescale(2)?;
            Ok(Some(ExceptionalRecord { lambda, half, lattice, form, idoneal: g.clone(), row }))
        })
        .collect();
    let mut out = Vec::new();
    for r in recs {
        if let Some(rec) = r? {
            out.push(rec);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub enum ExceptionalStatus {
    /// The complement genus is idoneal.
    Exceptional(GenusSymbol),
    NotExceptional,
    /// The idoneal test on the complement genus ran out of budget.
    Undecided(GenusSymbol),
}

/// Decides whether T is exceptional through the genus of its complement.
///
/// Only odd discriminant forms in case b can be exceptional; there the
/// complement genus is determined by q(T), and T is exceptional iff it is idoneal.
pub fn is_exceptional(t: &IntLattice, opts: &ClassifyOptions) -> Result<ExceptionalStatus> {
    let emb = embeds_in_lminus(t)?;
    exceptional_status(&emb, opts)
}

fn exceptional_status(emb: &EmbeddingReport, opts: &ClassifyOptions) -> Result<ExceptionalStatus> {
    if !emb.form.is_odd() || emb.lambda >= 12 {
        return Ok(ExceptionalStatus::NotExceptional);
    }
    let Some(m) = emb.matches.iter().find(|m| m.row.case == Some(Case::B)) else {
        return Ok(ExceptionalStatus::NotExceptional);
    };
    let r = 12 - emb.lambda;
    let g = GenusSymbol::from_discriminant_form(&m.complement.negate(), r, 0)
        .and_then(|h| h.rescale_two(false))
        .ok_or_else(|| Error::InvalidArgument("complement genus does not exist".into()))?;
    Ok(match is_idoneal(&g, opts)? {
        IdonealVerdict::Idoneal(_) => ExceptionalStatus::Exceptional(g),
        IdonealVerdict::NotIdoneal(_) => ExceptionalStatus::NotExceptional,
        IdonealVerdict::BudgetExhausted(_) => ExceptionalStatus::Undecided(g),
    })
}

/// Looks T up in a generated list by genus.
pub fn find_exceptional<'a>(t: &IntLattice, records: &'a [ExceptionalRecord]) -> Option<&'a ExceptionalRecord> {
    let g = genus_of(t);
    records.iter().find(|r| genus_of(&r.lattice) == g)
}

// ---------------------------------------------------------------------------
// cover decision

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Covers,
    DoesNotCover,
    Undecided,
}

#[derive(Clone, Debug)]
pub enum Route {
    Embedding(String),
    Exceptional(GenusSymbol),
    NoRow,
    BudgetExhausted(GenusSymbol),
}

#[derive(Clone, Debug)]
pub struct CoverReport {
    pub lambda: usize,
    pub verdict: Verdict,
    pub route: Route,
    /// Condition label of the first matching row.
    pub condition: Option<&'static str>,
    pub embedding: EmbeddingReport,
}

/// Whether a K3 surface with transcendental lattice T covers an Enriques surface.
pub fn covers_enriques(t: &IntLattice, opts: &ClassifyOptions) -> Result<CoverReport> {
    let embedding = embeds_in_lminus(t)?;
    let lambda = embedding.lambda;
    let Some(first) = embedding.matches.first() else {
        return Ok(CoverReport { lambda, verdict: Verdict::DoesNotCover, route: Route::NoRow, condition: None, embedding });
    };
    let condition = Some(first.row.condition());
    let name = first.row.name();
    let (verdict, route) = match exceptional_status(&embedding, opts)? {
        ExceptionalStatus::NotExceptional => (Verdict::Covers, Route::Embedding(name)),
        ExceptionalStatus::Exceptional(g) => (Verdict::DoesNotCover, Route::Exceptional(g)),
        ExceptionalStatus::Undecided(g) => (Verdict::Undecided, Route::BudgetExhausted(g)),
    };
    Ok(CoverReport { lambda, verdict, route, condition, embedding })
}

impl fmt::Display for CoverReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = match self.verdict {
            Verdict::Covers => "covers",
            Verdict::DoesNotCover => "does-not-cover",
            Verdict::Undecided => "undecided",
        };
        write!(f, "{v}")?;
        if let Some(c) = self.condition {
            write!(f, " {c}")?;
        }
        writeln!(f)?;
        writeln!(f, "rank\t{}", self.lambda)?;
        writeln!(f, "q(T)\t{}", self.embedding.form)?;
        for m in &self.embedding.matches {
            writeln!(f, "row\t{}\tq = {}\tq(T^perp) = {}", m.row.name(), m.residual, m.complement)?;
        }
        match &self.route {
            Route::Embedding(r) => writeln!(f, "route\tembedding {r}"),
            Route::Exceptional(g) => writeln!(f, "route\texceptional, complement genus {g}"),
            Route::NoRow => writeln!(f, "route\tno row"),
            Route::BudgetExhausted(g) => writeln!(f, "route\tbudget exhausted on {g}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{e8, hyperbolic_plane, lambda_minus};

    fn opts() -> ClassifyOptions {
        ClassifyOptions::default()
    }

    #[test]
    fn rows_per_rank() {
        assert_eq!(embedding_rows(12).unwrap().len(), 1);
        assert_eq!(embedding_rows(11).unwrap().len(), 2);
        let l2: Vec<usize> = embedding_rows(4).unwrap().iter().map(|r| r.l2).collect();
        assert_eq!(l2, vec![2, 4, 4]);
        assert!(embedding_rows(13).is_err());
        let total: usize = (2..=12).map(|l| embedding_rows(l).unwrap().len()).sum();
        assert_eq!(total, 30);
    }

    #[test]
    fn splitting() {
        let q = TorsionForm::u(1).times(3).sum(&TorsionForm::w(2, 1, 1).unwrap());
        let r = split_u1(&q, 2).unwrap();
        assert!(r.is_isomorphic(&TorsionForm::u(1).sum(&TorsionForm::w(2, 1, 1).unwrap())));
        assert!(split_u1(&q, 4).is_none());
        // v₁ ⊕ v₁ ≅ u₁ ⊕ u₁
        let vv = TorsionForm::v(1).times(2);
        assert!(split_u1(&vv, 2).unwrap().is_trivial());
    }

    #[test]
    fn embeddings() {
        let u = hyperbolic_plane();
        assert!(embeds_in_lminus(&lambda_minus()).unwrap().embeds());
        assert!(!embeds_in_lminus(&u.direct_sum(&u)).unwrap().embeds());
        let u2 = u.rescale(2).unwrap();
        let e = embeds_in_lminus(&u2.direct_sum(&u2)).unwrap();
        let names: Vec<String> = e.matches.iter().map(|m| m.row.name()).collect();
        assert!(names.contains(&"4b".to_string()));
        let m = e.matches.iter().find(|m| m.row.name() == "4b").unwrap();
        assert!(m.complement.is_isomorphic(&TorsionForm::u(1).times(4)));
    }

    #[test]
    fn cover_decisions() {
        let r = covers_enriques(&lambda_minus(), &opts()).unwrap();
        assert_eq!((r.verdict, r.condition), (Verdict::Covers, Some("(xii)")));
        let e82 = e8().rescale(2).unwrap();
        let t = hyperbolic_plane().direct_sum(&e82).direct_sum(&IntLattice::diagonal(&[4]).unwrap());
        let r = covers_enriques(&t, &opts()).unwrap();
        assert_eq!((r.verdict, r.condition), (Verdict::Covers, Some("(x)")));
        // the rank 11 row (xi) with n = 1 is the exceptional lattice itself
        let t = hyperbolic_plane().rescale(2).unwrap().direct_sum(&e82).direct_sum(&IntLattice::diagonal(&[2]).unwrap());
        let r = covers_enriques(&t, &opts()).unwrap();
        assert_eq!((r.verdict, r.condition), (Verdict::DoesNotCover, Some("(xi)")));
        let t = hyperbolic_plane().rescale(2).unwrap().direct_sum(&e82).direct_sum(&IntLattice::diagonal(&[6]).unwrap());
        let r = covers_enriques(&t, &opts()).unwrap();
        assert_eq!((r.verdict, r.condition), (Verdict::Covers, Some("(xi)")));
        let u = hyperbolic_plane();
        assert_eq!(covers_enriques(&u.direct_sum(&u), &opts()).unwrap().verdict, Verdict::DoesNotCover);
    }

    #[test]
    fn rank_eleven() {
        let g = genus_of(&IntLattice::diagonal(&[1]).unwrap());
        let recs = enumerate_exceptional(11, &[g]).unwrap();
        assert_eq!(recs.len(), 1);
        assert!(!recs[0].half.is_even());
        assert_eq!(recs[0].half.determinant().abs(), 1);
        assert!(matches!(is_exceptional(&recs[0].lattice, &opts()).unwrap(), ExceptionalStatus::Exceptional(_)));
        assert!(find_exceptional(&recs[0].lattice, &recs).is_some());
    }
}
