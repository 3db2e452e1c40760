//! Frink filters, tight subsets and the two existence theorems (selection
//! principle, tight stretching) as finite searches.
//!
//! A subset `T` is tight when it is round and its formal meets are never
//! compactly covered by the complement: `T ¬Ĉ P∖T`. Tight subsets are
//! automatically Frink filters and hence upwards closed, which is what the
//! enumerator prunes on.
//!
//! The theorems proved by maximality arguments in the infinite case are
//! realised here as exhaustive searches in subset-index order, so results
//! are reproducible and a `NoSolution` under verified hypotheses signals an
//! implementation defect rather than a valid outcome.

use crate::carrier::Subset;
use crate::error::{Error, Result};
use crate::rel::{CoverKind, RelStructure};
use crate::report::ValidationReport;

/// Largest carrier for the exhaustive subset scans in this module.
const SCAN_LIMIT: usize = 24;

/// A validated tight subset of a relational structure.
///
/// Meaningful only together with the structure it was validated against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TightSet {
    members: Subset,
}

impl TightSet {
    /// Validate the tight-set invariants: round, not meet-covered by the
    /// complement, and upwards closed.
    pub fn new(rel: &RelStructure, members: Subset) -> Result<TightSet> {
        if members.universe() != rel.size() {
            return Err(Error::CarrierMismatch { expected: rel.size(), got: members.universe() });
        }
        if !is_tight(rel, members) {
            return Err(Error::Precondition("subset is not tight".into()));
        }
        debug_assert!(rel.is_up_closed(members), "tight subsets are upwards closed");
        Ok(TightSet { members })
    }

    pub fn members(&self) -> Subset {
        self.members
    }
}

/// Is `U` a Frink filter? `u ∈ U` exactly when some `w ≺ u` bounds a formal
/// meet of finitely many members (reduced to the meet of all of `U`).
pub fn is_frink_filter(rel: &RelStructure, u: Subset) -> bool {
    assert_eq!(u.universe(), rel.size(), "subsets over different carriers");
    let meet = rel.formal_meet(u).expect("checked width");
    (0..rel.size()).all(|elem| {
        let witnessed = rel
            .preds(elem)
            .iter()
            .any(|w| meet.is_subset_of(rel.preds(w)));
        witnessed == u.contains(elem)
    })
}

/// Is `T` tight: round and `T ¬Ĉ P∖T`?
pub fn is_tight(rel: &RelStructure, t: Subset) -> bool {
    rel.is_round(t) && !rel.meet_cover(CoverKind::Compact, t, t.complement())
}

/// The outcome of [`enumerate_tight`]: the non-empty tight subsets in
/// subset-index order, with the tightness of the empty set flagged
/// separately (spectrum builders drop it).
#[derive(Clone, Debug)]
pub struct TightEnumeration {
    pub sets: Vec<TightSet>,
    pub empty_is_tight: bool,
}

/// Enumerate every tight subset of a validated pseudobasis.
///
/// Candidates are pruned to upwards-closed round subsets (`T = T^≺`) before
/// the meet-cover test; enumeration order is subset-index order.
pub fn enumerate_tight(rel: &RelStructure) -> Result<TightEnumeration> {
    if !rel.validate_pseudobasis().passed() {
        return Err(Error::Precondition("enumerate_tight needs an abstract pseudobasis".into()));
    }
    let n = rel.size();
    if n > SCAN_LIMIT {
        return Err(Error::TooLarge(format!("tight enumeration over {n} > {SCAN_LIMIT} elements")));
    }
    let empty_is_tight = is_tight(rel, rel.carrier().empty());
    let mut sets = Vec::new();
    for mask in 1u128..(1u128 << n) {
        let t = rel.carrier().subset_from_mask(mask);
        if !rel.is_round(t) || !rel.is_up_closed(t) {
            continue;
        }
        if !rel.meet_cover(CoverKind::Compact, t, t.complement()) {
            sets.push(TightSet { members: t });
        }
    }
    Ok(TightEnumeration { sets, empty_is_tight })
}

/// All `⊆`-maximal subsets among the round centred subsets.
pub fn maximal_round_centred(rel: &RelStructure) -> Result<Vec<Subset>> {
    let n = rel.size();
    if n > SCAN_LIMIT {
        return Err(Error::TooLarge(format!("round-centred scan over {n} > {SCAN_LIMIT} elements")));
    }
    let mut candidates: Vec<Subset> = Vec::new();
    for mask in 0u128..(1u128 << n) {
        let u = rel.carrier().subset_from_mask(mask);
        if rel.is_round(u) && rel.is_centred(u) {
            candidates.push(u);
        }
    }
    // keep candidates not strictly below another candidate; scanning in
    // descending size keeps the inner loop over maximal sets only
    candidates.sort_by_key(|s| std::cmp::Reverse(s.len()));
    let mut maximal: Vec<Subset> = Vec::new();
    for u in candidates {
        if !maximal.iter().any(|m| u.is_subset_of(*m) && u != *m) {
            maximal.push(u);
        }
    }
    maximal.sort_by_key(|s| s.mask());
    Ok(maximal)
}

/// The collection `Δ` of a [`SelectionProblem`]: either an explicit list of
/// subsets or a membership oracle.
pub enum Delta<'a> {
    List(Vec<Subset>),
    Oracle(&'a (dyn Fn(Subset) -> bool + Sync)),
}

impl<'a> Delta<'a> {
    /// Membership query. For oracles, every positive answer is checked to be
    /// `≻`-closed on the spot; a violation means the problem is malformed.
    fn contains(&self, rel: &RelStructure, d: Subset) -> Result<bool> {
        match self {
            Delta::List(list) => Ok(list.contains(&d)),
            Delta::Oracle(f) => {
                let hit = f(d);
                if hit && !d.is_empty() {
                    for elem in 0..rel.size() {
                        let above = !d.contains(elem)
                            && d.iter().any(|x| rel.prec(x, elem))
                            && !f(d.with(elem));
                        if above {
                            return Err(Error::MalformedProblem(format!(
                                "delta oracle is not ≻-closed at element {}",
                                rel.carrier().label(elem)
                            )));
                        }
                    }
                }
                Ok(hit)
            }
        }
    }
}

/// A selection-principle instance: pick one element from each member of
/// `gamma` so the choices form a round set all of whose subsets lie in
/// `delta`. `theta`, when given, names for each `gamma[i]` an index `j` with
/// `gamma[j] ≺ gamma[i]`.
pub struct SelectionProblem<'a> {
    pub rel: &'a RelStructure,
    pub delta: Delta<'a>,
    pub gamma: Vec<Subset>,
    pub theta: Option<Vec<usize>>,
}

/// Result of [`selection_solve`]: a witness, or the rerun hypothesis report
/// explaining which assumption fails.
#[derive(Debug)]
pub enum SelectionOutcome {
    Solution(Subset),
    NoSolution(ValidationReport),
}

impl SelectionProblem<'_> {
    /// Check the problem hypotheses: `Δ` is `≻`-closed, `Γ` is `≺`-round
    /// (via `theta` when present) and `Γ` is `Δ`-centred.
    pub fn hypothesis_report(&self) -> Result<ValidationReport> {
        let rel = self.rel;
        let n = rel.size();
        let mut report = ValidationReport::new();

        match &self.delta {
            Delta::List(list) => {
                let mut witness = None;
                'closed: for d in list {
                    for elem in 0..n {
                        if d.contains(elem) || d.is_empty() {
                            continue;
                        }
                        if d.iter().any(|x| rel.prec(x, elem)) && !list.contains(&d.with(elem)) {
                            witness = Some((*d, elem));
                            break 'closed;
                        }
                    }
                }
                match witness {
                    None => report.pass("delta-succ-closed"),
                    Some((d, elem)) => report.fail(
                        "delta-succ-closed",
                        serde_json::json!({
                            "set": rel.carrier().format_subset(d),
                            "element": rel.carrier().label(elem),
                        }),
                    ),
                }
            }
            Delta::Oracle(_) => {
                // verified on queried witnesses during the search
                report.advisory("delta-succ-closed", true, None);
            }
        }

        if let Some(theta) = &self.theta {
            if theta.len() != self.gamma.len() || theta.iter().any(|&j| j >= self.gamma.len()) {
                return Err(Error::MalformedProblem("theta is not a self-map on gamma indices".into()));
            }
        }
        let mut round_witness = None;
        for (i, f) in self.gamma.iter().enumerate() {
            let ok = match &self.theta {
                Some(theta) => rel.subset_prec(self.gamma[theta[i]], *f)?,
                None => self
                    .gamma
                    .iter()
                    .any(|g| rel.subset_prec(*g, *f).unwrap_or(false)),
            };
            if !ok {
                round_witness = Some(i);
                break;
            }
        }
        match round_witness {
            None => report.pass("gamma-prec-round"),
            Some(i) => report.fail(
                "gamma-prec-round",
                serde_json::json!({ "gamma_index": i, "set": rel.carrier().format_subset(self.gamma[i]) }),
            ),
        }

        let mut centred_witness = None;
        'phi: for phi_mask in 0u64..(1u64 << self.gamma.len()) {
            let phi: Vec<Subset> = self
                .gamma
                .iter()
                .enumerate()
                .filter(|(i, _)| phi_mask >> i & 1 == 1)
                .map(|(_, f)| *f)
                .collect();
            let found = match &self.delta {
                Delta::List(list) => list.iter().any(|d| phi.iter().all(|f| f.intersects(*d))),
                Delta::Oracle(f) => {
                    let mut hit = false;
                    for mask in 0u128..(1u128 << n) {
                        let d = rel.carrier().subset_from_mask(mask);
                        if phi.iter().all(|g| g.intersects(d)) && f(d) {
                            hit = true;
                            break;
                        }
                    }
                    hit
                }
            };
            if !found {
                centred_witness = Some(phi_mask);
                break 'phi;
            }
        }
        match centred_witness {
            None => report.pass("gamma-delta-centred"),
            Some(phi) => report.fail(
                "gamma-delta-centred",
                serde_json::json!({ "phi_mask": phi }),
            ),
        }

        Ok(report)
    }
}

/// Solve a selection problem: find a round `R` meeting every member of
/// `gamma` whose finite subsets all lie in `delta`.
///
/// The search scans subsets in ascending index order, so ties resolve to the
/// lowest subset index. `NoSolution` reruns the hypothesis checks and
/// reports them; under verified hypotheses it cannot occur.
pub fn selection_solve(problem: &SelectionProblem) -> Result<SelectionOutcome> {
    let rel = problem.rel;
    let n = rel.size();
    if n > 20 {
        return Err(Error::TooLarge(format!("selection scan over {n} > 20 elements")));
    }
    if problem.gamma.len() > 63 {
        return Err(Error::MalformedProblem("gamma has more than 63 members".into()));
    }
    if let Some(theta) = &problem.theta {
        if theta.len() != problem.gamma.len() || theta.iter().any(|&j| j >= problem.gamma.len()) {
            return Err(Error::MalformedProblem("theta is not a self-map on gamma indices".into()));
        }
    }
    for f in &problem.gamma {
        if f.universe() != n {
            return Err(Error::CarrierMismatch { expected: n, got: f.universe() });
        }
    }
    if let Delta::List(list) = &problem.delta {
        // exhaustive ≻-closure check for explicit lists
        for d in list {
            for elem in 0..n {
                if !d.contains(elem)
                    && d.iter().any(|x| rel.prec(x, elem))
                    && !list.contains(&d.with(elem))
                {
                    return Err(Error::MalformedProblem(format!(
                        "delta list is not ≻-closed: {} misses element {}",
                        rel.carrier().format_subset(*d),
                        rel.carrier().label(elem)
                    )));
                }
            }
        }
    }

    'candidates: for mask in 0u128..(1u128 << n) {
        let r = rel.carrier().subset_from_mask(mask);
        if problem.gamma.iter().any(|f| !f.intersects(r)) {
            continue;
        }
        if !rel.is_round(r) {
            continue;
        }
        for d in r.subsets() {
            if !problem.delta.contains(rel, d)? {
                continue 'candidates;
            }
        }
        return Ok(SelectionOutcome::Solution(r));
    }
    Ok(SelectionOutcome::NoSolution(problem.hypothesis_report()?))
}

/// Result of [`tight_stretch`]. Under valid preconditions the theorem
/// guarantees a witness; `NoSolution` is a defect signal.
#[derive(Clone, Debug)]
pub enum StretchOutcome {
    Tight(TightSet),
    NoSolution,
}

/// Stretch a round `R` to a tight `T ⊇ R` with `Q ∪ T ¬Ĉ P∖T` that avoids
/// `S`, by exhaustive scan over tight supersets in subset-index order.
///
/// Preconditions: `R` is round and `Q ∪ R ¬Ĉ S`.
pub fn tight_stretch(
    rel: &RelStructure,
    q: Subset,
    r: Subset,
    s: Subset,
) -> Result<StretchOutcome> {
    for sub in [q, r, s] {
        if sub.universe() != rel.size() {
            return Err(Error::CarrierMismatch { expected: rel.size(), got: sub.universe() });
        }
    }
    if !rel.is_round(r) {
        return Err(Error::Precondition("tight_stretch: R must be round".into()));
    }
    if rel.meet_cover(CoverKind::Compact, q.union(r), s) {
        return Err(Error::Precondition("tight_stretch: Q ∪ R must not meet-cover S".into()));
    }
    let tight = enumerate_tight(rel)?;
    // subset-index order; the empty tight set has the lowest index
    let empty = rel.carrier().empty();
    let candidates = tight
        .empty_is_tight
        .then_some(TightSet { members: empty })
        .into_iter()
        .chain(tight.sets.iter().copied());
    for t in candidates {
        let m = t.members();
        if r.is_subset_of(m)
            && !m.intersects(s)
            && !rel.meet_cover(CoverKind::Compact, q.union(m), m.complement())
        {
            return Ok(StretchOutcome::Tight(t));
        }
    }
    Ok(StretchOutcome::NoSolution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn s(rel: &RelStructure, labels: &[&str]) -> Subset {
        rel.carrier().subset_from_labels(labels.iter().copied()).unwrap()
    }

    #[test]
    fn frink_filter_examples() {
        let e3 = fixtures::e3();
        assert!(is_frink_filter(&e3, s(&e3, &["t"])));
        assert!(is_frink_filter(&e3, s(&e3, &["x", "t"])));
        let e4 = fixtures::e4();
        assert!(!is_frink_filter(&e4, s(&e4, &["v"])));
    }

    #[test]
    fn tight_examples() {
        let e1 = fixtures::e1();
        assert!(is_tight(&e1, s(&e1, &["a"])));
        let e3 = fixtures::e3();
        assert!(!is_tight(&e3, s(&e3, &["t"])));
        let e2 = fixtures::e2();
        assert!(is_tight(&e2, s(&e2, &["a", "b", "c"])));
        // exhaustive: no other subset of E2 is tight
        for mask in 0u128..(1 << 3) {
            let t = e2.carrier().subset_from_mask(mask);
            assert_eq!(is_tight(&e2, t), t == e2.carrier().full());
        }
    }

    #[test]
    fn enumerate_tight_matches_brute_force_filter() {
        for rel in [fixtures::e1(), fixtures::e2(), fixtures::e3(), fixtures::e4()] {
            let brute: Vec<u128> = (1u128..(1 << rel.size()))
                .filter(|&m| is_tight(&rel, rel.carrier().subset_from_mask(m)))
                .collect();
            let got: Vec<u128> =
                enumerate_tight(&rel).unwrap().sets.iter().map(|t| t.members().mask()).collect();
            assert_eq!(got, brute);
        }
    }

    #[test]
    fn enumerate_tight_fixture_values() {
        let e1 = fixtures::e1();
        let tights = enumerate_tight(&e1).unwrap();
        assert!(!tights.empty_is_tight);
        assert_eq!(
            tights.sets.iter().map(|t| t.members()).collect::<Vec<_>>(),
            vec![s(&e1, &["a"]), s(&e1, &["b"])]
        );

        let e3 = fixtures::e3();
        assert_eq!(
            enumerate_tight(&e3).unwrap().sets.iter().map(|t| t.members()).collect::<Vec<_>>(),
            vec![s(&e3, &["x", "t"]), s(&e3, &["y", "t"])]
        );

        let e4 = fixtures::e4();
        assert_eq!(
            enumerate_tight(&e4).unwrap().sets.iter().map(|t| t.members()).collect::<Vec<_>>(),
            vec![s(&e4, &["u", "v"])]
        );
    }

    #[test]
    fn maximal_round_centred_examples() {
        let e3 = fixtures::e3();
        assert_eq!(
            maximal_round_centred(&e3).unwrap(),
            vec![s(&e3, &["x", "t"]), s(&e3, &["y", "t"])]
        );
        let e2 = fixtures::e2();
        assert_eq!(maximal_round_centred(&e2).unwrap(), vec![e2.carrier().full()]);
        let e1 = fixtures::e1();
        assert_eq!(maximal_round_centred(&e1).unwrap(), vec![s(&e1, &["a"]), s(&e1, &["b"])]);
    }

    fn centred_delta(rel: &RelStructure) -> Delta<'static> {
        let list: Vec<Subset> = (0u128..(1 << rel.size()))
            .map(|m| rel.carrier().subset_from_mask(m))
            .filter(|s| rel.is_centred(*s))
            .collect();
        Delta::List(list)
    }

    #[test]
    fn selection_examples() {
        let e3 = fixtures::e3();
        let problem = SelectionProblem {
            rel: &e3,
            delta: centred_delta(&e3),
            gamma: vec![s(&e3, &["x", "t"]), s(&e3, &["t"])],
            theta: None,
        };
        assert!(problem.hypothesis_report().unwrap().passed());
        match selection_solve(&problem).unwrap() {
            SelectionOutcome::Solution(r) => {
                assert!(e3.is_round(r));
                assert!(problem.gamma.iter().all(|f| f.intersects(r)));
                for d in r.subsets() {
                    assert!(e3.is_centred(d));
                }
            }
            SelectionOutcome::NoSolution(_) => panic!("selection must succeed"),
        }

        // vacuous selector
        let trivial = SelectionProblem {
            rel: &e3,
            delta: Delta::Oracle(&|_| true),
            gamma: vec![],
            theta: None,
        };
        match selection_solve(&trivial).unwrap() {
            SelectionOutcome::Solution(r) => assert!(r.is_empty()),
            SelectionOutcome::NoSolution(_) => panic!("empty gamma accepts the empty set"),
        }

        let e1 = fixtures::e1();
        let problem = SelectionProblem {
            rel: &e1,
            delta: centred_delta(&e1),
            gamma: vec![s(&e1, &["a", "b"])],
            theta: None,
        };
        match selection_solve(&problem).unwrap() {
            SelectionOutcome::Solution(r) => {
                assert!(r == s(&e1, &["a"]) || r == s(&e1, &["b"]));
            }
            SelectionOutcome::NoSolution(_) => panic!("selection must succeed"),
        }
    }

    #[test]
    fn selection_rejects_unclosed_delta() {
        let e3 = fixtures::e3();
        // {x} alone without {x,t} is not ≻-closed (x ≺ t)
        let problem = SelectionProblem {
            rel: &e3,
            delta: Delta::List(vec![e3.carrier().empty(), s(&e3, &["x"])]),
            gamma: vec![],
            theta: None,
        };
        assert!(matches!(selection_solve(&problem), Err(Error::MalformedProblem(_))));
    }

    #[test]
    fn stretch_examples() {
        let e3 = fixtures::e3();
        match tight_stretch(&e3, e3.carrier().empty(), s(&e3, &["t"]), s(&e3, &["y"])).unwrap() {
            StretchOutcome::Tight(t) => assert_eq!(t.members(), s(&e3, &["x", "t"])),
            StretchOutcome::NoSolution => panic!("stretch must succeed"),
        }

        let e1 = fixtures::e1();
        match tight_stretch(&e1, e1.carrier().empty(), e1.carrier().empty(), s(&e1, &["b"]))
            .unwrap()
        {
            StretchOutcome::Tight(t) => assert_eq!(t.members(), s(&e1, &["a"])),
            StretchOutcome::NoSolution => panic!("stretch must succeed"),
        }

        let e2 = fixtures::e2();
        match tight_stretch(&e2, e2.carrier().empty(), s(&e2, &["a"]), e2.carrier().empty())
            .unwrap()
        {
            StretchOutcome::Tight(t) => assert_eq!(t.members(), e2.carrier().full()),
            StretchOutcome::NoSolution => panic!("stretch must succeed"),
        }

        // precondition violations are errors
        let e4 = fixtures::e4();
        assert!(matches!(
            tight_stretch(&e4, e4.carrier().empty(), s(&e4, &["v"]), e4.carrier().empty()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn tight_sets_are_frink_filters_and_up_closed() {
        for rel in [fixtures::e1(), fixtures::e2(), fixtures::e3(), fixtures::e4()] {
            for t in enumerate_tight(&rel).unwrap().sets {
                assert!(is_frink_filter(&rel, t.members()));
                assert!(rel.is_up_closed(t.members()));
                assert_eq!(rel.up_image(t.members()).unwrap(), t.members());
            }
        }
    }
}
