//! Relational structures `(P, ≺)` and the cover calculus built from them:
//! images, the subset order, dense and compact covers, disjointness, formal
//! meets, centred/round predicates and pseudobasis validation.
//!
//! Conventions. For a subset `Q`, the up image `Q^≺ = {p : ∃q∈Q, q ≺ p}`
//! collects everything above `Q` and the down image `Q^≻ = {p : ∃q∈Q, p ≺ q}`
//! everything below it. The order extends to subsets by
//! `Q ≺ R ⇔ Q ⊆ R^≻`. The dense cover `Q D R` holds when everything below
//! `Q` has something below it that is below `R`; the compact cover `Q C R`
//! asks for a finite interpolant `F ≺ R` with `Q D F`.
//!
//! On a finite carrier the existential in the compact cover is monotone in
//! `F`, so `F := R^≻` is an optimal witness and `Q C R ⇔ Q D R^≻`. The
//! centred variants quantify a finite `F ⊆ Q` and apply the relation to the
//! formal meet of `F`; meets shrink as `F` grows, so `F := Q` is optimal
//! there. Both reductions are cross-checked against the brute-force
//! quantifiers by the instance battery.

use serde::{Deserialize, Serialize};

use crate::carrier::{Carrier, Subset, DEFAULT_CARRIER_CAP};
use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// Which relation to apply to a formal meet in [`RelStructure::meet_cover`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverKind {
    /// The subset order `≺`.
    Prec,
    /// The dense cover `D`.
    Dense,
    /// The compact cover `C`.
    Compact,
    /// Disjointness `⊥`.
    Disjoint,
}

/// A finite carrier with a binary relation `≺`, stored as successor and
/// predecessor masks per element. Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelStructure {
    carrier: Carrier,
    /// `succ[p]` is the mask of `{q : p ≺ q}`.
    succ: Vec<u128>,
    /// `pred[p]` is the mask of `{q : q ≺ p}`.
    pred: Vec<u128>,
}

impl RelStructure {
    /// Build from index pairs `(source, target)` meaning `source ≺ target`.
    pub fn new(carrier: Carrier, edges: &[(usize, usize)]) -> Result<Self> {
        let n = carrier.size();
        let mut succ = vec![0u128; n];
        let mut pred = vec![0u128; n];
        for &(s, t) in edges {
            if s >= n || t >= n {
                return Err(Error::Schema(format!("edge ({s},{t}) out of range for carrier of size {n}")));
            }
            succ[s] |= 1 << t;
            pred[t] |= 1 << s;
        }
        Ok(RelStructure { carrier, succ, pred })
    }

    /// Build from labelled pairs; unknown labels are an error, duplicates are
    /// ignored.
    pub fn from_labelled_pairs(carrier: Carrier, pairs: &[(String, String)]) -> Result<Self> {
        let mut edges = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            let s = carrier.index_of(a).ok_or_else(|| Error::UnknownLabel(a.clone()))?;
            let t = carrier.index_of(b).ok_or_else(|| Error::UnknownLabel(b.clone()))?;
            edges.push((s, t));
        }
        Self::new(carrier, &edges)
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    /// Does `p ≺ q` hold?
    pub fn prec(&self, p: usize, q: usize) -> bool {
        self.succ[p] >> q & 1 == 1
    }

    /// Successors of a single element as a subset.
    pub fn succs(&self, p: usize) -> Subset {
        self.carrier.subset_from_mask(self.succ[p])
    }

    /// Predecessors of a single element as a subset (`p^≻`).
    pub fn preds(&self, p: usize) -> Subset {
        self.carrier.subset_from_mask(self.pred[p])
    }

    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        let mut out = Vec::new();
        for p in 0..n {
            for q in 0..n {
                if self.prec(p, q) {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// The same carrier with the transposed relation.
    pub fn transpose(&self) -> RelStructure {
        RelStructure { carrier: self.carrier.clone(), succ: self.pred.clone(), pred: self.succ.clone() }
    }

    /// Reflexive closure.
    pub fn reflexive_closure(&self) -> RelStructure {
        let mut r = self.clone();
        for i in 0..r.size() {
            r.succ[i] |= 1 << i;
            r.pred[i] |= 1 << i;
        }
        r
    }

    /// Transitive closure (iterated mask propagation).
    pub fn transitive_closure(&self) -> RelStructure {
        let n = self.size();
        let mut succ = self.succ.clone();
        loop {
            let mut changed = false;
            for p in 0..n {
                let mut acc = succ[p];
                let mut qs = succ[p];
                while qs != 0 {
                    let q = qs.trailing_zeros() as usize;
                    qs &= qs - 1;
                    acc |= succ[q];
                }
                if acc != succ[p] {
                    succ[p] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let mut pred = vec![0u128; n];
        for p in 0..n {
            let mut qs = succ[p];
            while qs != 0 {
                let q = qs.trailing_zeros() as usize;
                qs &= qs - 1;
                pred[q] |= 1 << p;
            }
        }
        RelStructure { carrier: self.carrier.clone(), succ, pred }
    }

    #[inline]
    fn want(&self, s: Subset) -> Result<()> {
        if s.universe() != self.size() {
            return Err(Error::CarrierMismatch { expected: self.size(), got: s.universe() });
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn up_mask(&self, q: u128) -> u128 {
        let mut acc = 0u128;
        let mut qs = q;
        while qs != 0 {
            let i = qs.trailing_zeros() as usize;
            qs &= qs - 1;
            acc |= self.succ[i];
        }
        acc
    }

    #[inline]
    pub(crate) fn down_mask(&self, q: u128) -> u128 {
        let mut acc = 0u128;
        let mut qs = q;
        while qs != 0 {
            let i = qs.trailing_zeros() as usize;
            qs &= qs - 1;
            acc |= self.pred[i];
        }
        acc
    }

    /// `Q^≺ = {p : ∃q ∈ Q, q ≺ p}`.
    pub fn up_image(&self, q: Subset) -> Result<Subset> {
        self.want(q)?;
        Ok(self.carrier.subset_from_mask(self.up_mask(q.mask())))
    }

    /// `Q^≻ = {p : ∃q ∈ Q, p ≺ q}`; the up image along the transpose.
    pub fn down_image(&self, q: Subset) -> Result<Subset> {
        self.want(q)?;
        Ok(self.carrier.subset_from_mask(self.down_mask(q.mask())))
    }

    /// Subset order: `Q ≺ R ⇔ Q ⊆ R^≻`.
    pub fn subset_prec(&self, q: Subset, r: Subset) -> Result<bool> {
        self.want(q)?;
        self.want(r)?;
        Ok(q.mask() & !self.down_mask(r.mask()) == 0)
    }

    /// Dense cover: `Q D R ⇔ ∀q ∈ Q^≻ ∃r ∈ R^≻ (r ≺ q)`.
    pub fn dense_cover(&self, q: Subset, r: Subset) -> Result<bool> {
        self.want(q)?;
        self.want(r)?;
        Ok(self.dense_mask(q.mask(), r.mask()))
    }

    #[inline]
    pub(crate) fn dense_mask(&self, q: u128, r: u128) -> bool {
        let dq = self.down_mask(q);
        dq & !self.up_mask(self.down_mask(r)) == 0
    }

    /// Compact cover: `Q C R ⇔ ∃ finite F (Q D F ≺ R)`, computed through the
    /// optimal witness `F := R^≻`.
    pub fn compact_cover(&self, q: Subset, r: Subset) -> Result<bool> {
        self.want(q)?;
        self.want(r)?;
        Ok(self.compact_mask(q.mask(), r.mask()))
    }

    #[inline]
    pub(crate) fn compact_mask(&self, q: u128, r: u128) -> bool {
        self.dense_mask(q, self.down_mask(r))
    }

    /// `Q ⊥ R ⇔ Q^≻ ∩ R^≻ = ∅`.
    pub fn disjoint(&self, q: Subset, r: Subset) -> Result<bool> {
        self.want(q)?;
        self.want(r)?;
        Ok(self.down_mask(q.mask()) & self.down_mask(r.mask()) == 0)
    }

    /// `Q^⊥ = {p : Q ⊥ {p}}`.
    pub fn perp_set(&self, q: Subset) -> Result<Subset> {
        self.want(q)?;
        let dq = self.down_mask(q.mask());
        let mut out = self.carrier.empty();
        for p in 0..self.size() {
            if dq & self.pred[p] == 0 {
                out.insert(p);
            }
        }
        Ok(out)
    }

    /// Formal meet `F̂ = ⋂_{f∈F} f^≻`; the full carrier when `F = ∅`.
    pub fn formal_meet(&self, f: Subset) -> Result<Subset> {
        self.want(f)?;
        Ok(self.carrier.subset_from_mask(self.meet_mask(f.mask())))
    }

    #[inline]
    pub(crate) fn meet_mask(&self, f: u128) -> u128 {
        let mut acc = Subset::full(self.size()).mask();
        let mut fs = f;
        while fs != 0 {
            let i = fs.trailing_zeros() as usize;
            fs &= fs - 1;
            acc &= self.pred[i];
        }
        acc
    }

    /// Centred: every finite `F ⊆ Q` has non-empty formal meet. Reduced on a
    /// finite carrier to the meet of `Q` itself (for non-empty `Q`).
    pub fn is_centred(&self, q: Subset) -> bool {
        assert_eq!(q.universe(), self.size(), "subsets over different carriers");
        q.is_empty() || self.meet_mask(q.mask()) != 0
    }

    /// Centred cover `Q ⊏̂ R ⇔ ∃ finite F ⊆ Q (F̂ ⊏ R)`, reduced to `F := Q`.
    pub fn meet_cover(&self, kind: CoverKind, q: Subset, r: Subset) -> bool {
        assert_eq!(q.universe(), self.size(), "subsets over different carriers");
        assert_eq!(r.universe(), self.size(), "subsets over different carriers");
        let m = self.meet_mask(q.mask());
        match kind {
            CoverKind::Prec => m & !self.down_mask(r.mask()) == 0,
            CoverKind::Dense => self.dense_mask(m, r.mask()),
            CoverKind::Compact => self.compact_mask(m, r.mask()),
            CoverKind::Disjoint => self.down_mask(m) & self.down_mask(r.mask()) == 0,
        }
    }

    /// Round: every element of `R` has a strict predecessor inside `R`.
    pub fn is_round(&self, r: Subset) -> bool {
        assert_eq!(r.universe(), self.size(), "subsets over different carriers");
        r.iter().all(|i| self.pred[i] & r.mask() != 0)
    }

    /// Upwards closed: `R^≺ ⊆ R`.
    pub fn is_up_closed(&self, r: Subset) -> bool {
        assert_eq!(r.universe(), self.size(), "subsets over different carriers");
        self.up_mask(r.mask()) & !r.mask() == 0
    }

    /// Check the abstract-pseudobasis axioms: the full carrier is round, `≺`
    /// is transitive, and `p ≺ q ⇒ p C q^≻` (the shrinking condition). Each
    /// failure carries a replayable witness.
    pub fn validate_pseudobasis(&self) -> ValidationReport {
        let n = self.size();
        let mut report = ValidationReport::new();

        let not_round: Vec<usize> = (0..n).filter(|&p| self.pred[p] == 0).collect();
        match not_round.first() {
            None => report.pass("carrier-round"),
            Some(&p) => report.fail(
                "carrier-round",
                serde_json::json!({ "element": self.carrier.label(p) }),
            ),
        }

        let mut transitive = None;
        'outer: for p in 0..n {
            for q in 0..n {
                if !self.prec(p, q) {
                    continue;
                }
                // p ≺ q: everything above q must be above p
                if self.succ[q] & !self.succ[p] != 0 {
                    let r = (self.succ[q] & !self.succ[p]).trailing_zeros() as usize;
                    transitive = Some((p, q, r));
                    break 'outer;
                }
            }
        }
        match transitive {
            None => report.pass("transitive"),
            Some((p, q, r)) => report.fail(
                "transitive",
                serde_json::json!({
                    "p": self.carrier.label(p),
                    "q": self.carrier.label(q),
                    "r": self.carrier.label(r),
                }),
            ),
        }

        let mut shrinking = None;
        'outer2: for p in 0..n {
            for q in 0..n {
                if self.prec(p, q) && !self.compact_mask(1 << p, self.pred[q]) {
                    shrinking = Some((p, q));
                    break 'outer2;
                }
            }
        }
        match shrinking {
            None => report.pass("shrinking"),
            Some((p, q)) => report.fail(
                "shrinking",
                serde_json::json!({ "p": self.carrier.label(p), "q": self.carrier.label(q) }),
            ),
        }

        report
    }

    /// Separativity: `≺` coincides with `C` on singletons. Since shrinking
    /// gives `p ≺ q ⇒ p C q`, the check is that `p ⊀ q` forbids `p C q`.
    pub fn is_separative(&self) -> Result<ValidationReport> {
        if !self.validate_pseudobasis().passed() {
            return Err(Error::Precondition("is_separative needs an abstract pseudobasis".into()));
        }
        let mut report = ValidationReport::new();
        let mut witness = None;
        'outer: for p in 0..self.size() {
            for q in 0..self.size() {
                if !self.prec(p, q) && self.compact_mask(1 << p, 1 << q) {
                    witness = Some((p, q));
                    break 'outer;
                }
            }
        }
        match witness {
            None => report.pass("separative"),
            Some((p, q)) => report.fail(
                "separative",
                serde_json::json!({ "p": self.carrier.label(p), "q": self.carrier.label(q) }),
            ),
        }
        Ok(report)
    }
}

/// On-disk relation format:
/// `{"elements": ["a","b"], "rel": [["a","a"],["b","b"]]}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct RelationFile {
    pub elements: Vec<String>,
    pub rel: Vec<(String, String)>,
}

impl RelationFile {
    pub fn to_rel(&self, cap: usize) -> Result<RelStructure> {
        let carrier = Carrier::with_cap(self.elements.clone(), cap)?;
        RelStructure::from_labelled_pairs(carrier, &self.rel)
    }

    pub fn from_rel(rel: &RelStructure) -> Self {
        let c = rel.carrier();
        RelationFile {
            elements: c.labels().to_vec(),
            rel: rel
                .edge_pairs()
                .into_iter()
                .map(|(p, q)| (c.label(p).to_string(), c.label(q).to_string()))
                .collect(),
        }
    }
}

/// Parse the relation JSON format.
pub fn parse_relation(text: &str, cap: usize) -> Result<RelStructure> {
    let file: RelationFile = serde_json::from_str(text)?;
    file.to_rel(cap)
}

pub fn parse_relation_default(text: &str) -> Result<RelStructure> {
    parse_relation(text, DEFAULT_CARRIER_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    /// Definitional forms used to derive expected values, written as plain
    /// loops independent of the mask-based implementations above.
    mod oracle {
        use super::*;

        pub fn up_image(rel: &RelStructure, q: Subset) -> Subset {
            let n = rel.size();
            let mut out = Subset::empty(n);
            for p in 0..n {
                if (0..n).any(|x| q.contains(x) && rel.prec(x, p)) {
                    out.insert(p);
                }
            }
            out
        }

        pub fn down_image(rel: &RelStructure, q: Subset) -> Subset {
            let n = rel.size();
            let mut out = Subset::empty(n);
            for p in 0..n {
                if (0..n).any(|x| q.contains(x) && rel.prec(p, x)) {
                    out.insert(p);
                }
            }
            out
        }

        pub fn dense(rel: &RelStructure, q: Subset, r: Subset) -> bool {
            let dq = down_image(rel, q);
            let dr = down_image(rel, r);
            dq.iter().all(|x| dr.iter().any(|y| rel.prec(y, x)))
        }

        /// Brute-force compact cover: quantifies every `F ≺ R`.
        pub fn compact(rel: &RelStructure, q: Subset, r: Subset) -> bool {
            let n = rel.size();
            crate::carrier::all_subsets(n)
                .any(|f| f.is_subset_of(down_image(rel, r)) && dense(rel, q, f))
        }
    }

    fn s(rel: &RelStructure, labels: &[&str]) -> Subset {
        rel.carrier().subset_from_labels(labels.iter().copied()).unwrap()
    }

    #[test]
    fn up_image_examples() {
        let e1 = fixtures::e1();
        let q = s(&e1, &["a"]);
        assert_eq!(e1.up_image(q).unwrap(), oracle::up_image(&e1, q));
        assert_eq!(e1.up_image(q).unwrap(), s(&e1, &["a"]));

        // empty existential
        assert!(e1.up_image(e1.carrier().empty()).unwrap().is_empty());

        let e4 = fixtures::e4();
        let q = s(&e4, &["u"]);
        assert_eq!(e4.up_image(q).unwrap(), s(&e4, &["u", "v"]));
        assert_eq!(e4.up_image(q).unwrap(), oracle::up_image(&e4, q));
        // down image is the transpose direction
        assert_eq!(e4.down_image(s(&e4, &["v"])).unwrap(), s(&e4, &["u"]));
    }

    #[test]
    fn subset_prec_examples() {
        let e2 = fixtures::e2();
        assert!(e2.subset_prec(s(&e2, &["c"]), s(&e2, &["a"])).unwrap());
        // the empty set is below everything
        assert!(e2.subset_prec(e2.carrier().empty(), s(&e2, &["b"])).unwrap());
        let e1 = fixtures::e1();
        assert!(!e1.subset_prec(s(&e1, &["a"]), s(&e1, &["b"])).unwrap());
    }

    #[test]
    fn dense_cover_examples() {
        let e2 = fixtures::e2();
        assert!(e2.dense_cover(s(&e2, &["a"]), s(&e2, &["b"])).unwrap());
        assert!(oracle::dense(&e2, s(&e2, &["a"]), s(&e2, &["b"])));
        assert!(e2.dense_cover(e2.carrier().empty(), s(&e2, &["b"])).unwrap());
        let e1 = fixtures::e1();
        assert!(!e1.dense_cover(s(&e1, &["a"]), s(&e1, &["b"])).unwrap());
    }

    #[test]
    fn compact_cover_examples_and_reduction() {
        let e2 = fixtures::e2();
        assert!(e2.compact_cover(s(&e2, &["a"]), s(&e2, &["b"])).unwrap());
        assert!(e2.compact_cover(e2.carrier().empty(), s(&e2, &["b"])).unwrap());
        let e1 = fixtures::e1();
        assert!(!e1.compact_cover(s(&e1, &["a"]), s(&e1, &["b"])).unwrap());

        // the F := R^≻ reduction agrees with the brute-force quantifier
        for rel in [fixtures::e1(), fixtures::e2(), fixtures::e3(), fixtures::e4()] {
            let n = rel.size();
            for q in crate::carrier::all_subsets(n) {
                for r in crate::carrier::all_subsets(n) {
                    assert_eq!(rel.compact_cover(q, r).unwrap(), oracle::compact(&rel, q, r));
                }
            }
        }
    }

    #[test]
    fn disjoint_examples() {
        let e1 = fixtures::e1();
        assert!(e1.disjoint(s(&e1, &["a"]), s(&e1, &["b"])).unwrap());
        let e2 = fixtures::e2();
        assert!(!e2.disjoint(s(&e2, &["a"]), s(&e2, &["b"])).unwrap());
        // ⊥ is irreflexive at round elements
        for p in 0..e2.size() {
            let sp = e2.carrier().singleton(p);
            assert!(!e2.disjoint(sp, sp).unwrap());
        }
        assert_eq!(e1.perp_set(s(&e1, &["a"])).unwrap(), s(&e1, &["b"]));
    }

    #[test]
    fn formal_meet_examples() {
        let e2 = fixtures::e2();
        assert_eq!(e2.formal_meet(s(&e2, &["a", "b"])).unwrap(), s(&e2, &["c"]));
        assert_eq!(e2.formal_meet(e2.carrier().empty()).unwrap(), e2.carrier().full());
        let e1 = fixtures::e1();
        assert!(e1.formal_meet(s(&e1, &["a", "b"])).unwrap().is_empty());
    }

    #[test]
    fn centred_examples_and_reduction() {
        let e2 = fixtures::e2();
        assert!(e2.is_centred(s(&e2, &["a", "b"])));
        let e1 = fixtures::e1();
        assert!(!e1.is_centred(s(&e1, &["a", "b"])));
        assert!(e1.is_centred(e1.carrier().empty()));

        // reduction agrees with the all-finite-subsets definition
        for rel in [fixtures::e1(), fixtures::e2(), fixtures::e3(), fixtures::e4()] {
            for q in crate::carrier::all_subsets(rel.size()) {
                let brute = q.subsets().all(|f| !rel.formal_meet(f).unwrap().is_empty());
                assert_eq!(rel.is_centred(q), brute);
            }
        }
    }

    #[test]
    fn meet_cover_examples_and_reduction() {
        let e3 = fixtures::e3();
        assert!(!e3.meet_cover(CoverKind::Compact, s(&e3, &["x", "t"]), s(&e3, &["y"])));
        let e2 = fixtures::e2();
        assert!(e2.meet_cover(CoverKind::Compact, s(&e2, &["a", "b"]), s(&e2, &["c"])));
        // ∅ meet-covers R exactly when the full carrier C-covers R
        for rel in [fixtures::e1(), fixtures::e2(), fixtures::e3(), fixtures::e4()] {
            let full = rel.carrier().full();
            let empty = rel.carrier().empty();
            assert_eq!(
                rel.meet_cover(CoverKind::Compact, empty, full),
                rel.compact_cover(full, full).unwrap()
            );
        }

        // the F := Q reduction agrees with the brute-force quantifier
        for rel in [fixtures::e1(), fixtures::e2(), fixtures::e3(), fixtures::e4()] {
            let n = rel.size();
            for q in crate::carrier::all_subsets(n) {
                for r in crate::carrier::all_subsets(n) {
                    for kind in [CoverKind::Prec, CoverKind::Dense, CoverKind::Compact, CoverKind::Disjoint] {
                        let brute = q.subsets().any(|f| {
                            let m = rel.formal_meet(f).unwrap();
                            match kind {
                                CoverKind::Prec => rel.subset_prec(m, r).unwrap(),
                                CoverKind::Dense => oracle::dense(&rel, m, r),
                                CoverKind::Compact => oracle::compact(&rel, m, r),
                                CoverKind::Disjoint => rel.disjoint(m, r).unwrap(),
                            }
                        });
                        assert_eq!(rel.meet_cover(kind, q, r), brute, "{kind:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn round_examples() {
        let e4 = fixtures::e4();
        assert!(e4.is_round(s(&e4, &["u", "v"])));
        assert!(!e4.is_round(s(&e4, &["v"])));
        assert!(e4.is_round(e4.carrier().empty()));
    }

    #[test]
    fn pseudobasis_validation() {
        for rel in [fixtures::e1(), fixtures::e2(), fixtures::e3(), fixtures::e4()] {
            assert!(rel.validate_pseudobasis().passed());
        }

        // chain u ≺ v without loops: u has no predecessor
        let c = Carrier::new(["u", "v"]).unwrap();
        let chain = RelStructure::new(c, &[(0, 1)]).unwrap();
        let report = chain.validate_pseudobasis();
        assert!(!report.check("carrier-round").unwrap().pass);
        assert_eq!(
            report.check("carrier-round").unwrap().witness.as_ref().unwrap()["element"],
            "u"
        );

        // 2-cycle without loops is not transitive: p ≺ q ≺ p but not p ≺ p
        let c = Carrier::new(["p", "q"]).unwrap();
        let cycle = RelStructure::new(c, &[(0, 1), (1, 0)]).unwrap();
        let report = cycle.validate_pseudobasis();
        let t = report.check("transitive").unwrap();
        assert!(!t.pass);
        let w = t.witness.as_ref().unwrap();
        // replay the witness against the definition
        let (p, q, r) = (
            cycle.carrier().index_of(w["p"].as_str().unwrap()).unwrap(),
            cycle.carrier().index_of(w["q"].as_str().unwrap()).unwrap(),
            cycle.carrier().index_of(w["r"].as_str().unwrap()).unwrap(),
        );
        assert!(cycle.prec(p, q) && cycle.prec(q, r) && !cycle.prec(p, r));
    }

    #[test]
    fn separativity_examples() {
        assert!(fixtures::e1().is_separative().unwrap().passed());
        assert!(fixtures::e3().is_separative().unwrap().passed());
        let e2 = fixtures::e2();
        let report = e2.is_separative().unwrap();
        assert!(!report.passed());
        let w = report.check("separative").unwrap().witness.as_ref().unwrap();
        assert_eq!(w["p"], "a");
        assert_eq!(w["q"], "b");
        // replay the witness: a ⊀ b yet {a} C {b}
        let p = e2.carrier().index_of(w["p"].as_str().unwrap()).unwrap();
        let q = e2.carrier().index_of(w["q"].as_str().unwrap()).unwrap();
        assert!(!e2.prec(p, q));
        assert!(e2.compact_cover(e2.carrier().singleton(p), e2.carrier().singleton(q)).unwrap());
    }

    #[test]
    fn relation_json_round_trip() {
        let text = r#"{"elements": ["a","b"], "rel": [["a","a"],["b","b"],["a","a"]]}"#;
        let rel = parse_relation_default(text).unwrap();
        assert_eq!(rel.edge_pairs(), vec![(0, 0), (1, 1)]);

        let bad = r#"{"elements": ["a"], "rel": [["a","z"]]}"#;
        assert!(matches!(parse_relation_default(bad), Err(Error::UnknownLabel(_))));

        let file = RelationFile::from_rel(&rel);
        let back = file.to_rel(64).unwrap();
        assert_eq!(back, rel);
    }
}
