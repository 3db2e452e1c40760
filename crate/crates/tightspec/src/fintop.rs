//! Finite topological spaces: open-set families, specialization and
//! saturation, compact containment, patch topologies, pseudo(sub)basis
//! axioms and topology recovery.
//!
//! A finite space is Alexandroff: each point `x` has a minimal open
//! neighbourhood `N_x` (the intersection of all opens containing `x`) and
//! the opens are exactly the upwards-closed sets of the specialization
//! preorder `x ≤ y ⇔ y ∈ N_x`. The minimal neighbourhoods realise the
//! various separation and saturation quantifiers with optimal witnesses;
//! the literal fixed-point constructions are kept alongside in tests and
//! cross-checked.
//!
//! Compactness is degenerate here: an open cover is a subfamily of the
//! finite open family, hence its own finite subcover, so every subset is
//! compact and compact containment `O ⋐ N` collapses to `O ⊆ N`. That
//! degeneracy is asserted corpus-wide rather than silently assumed.

use serde::{Deserialize, Serialize};

use crate::carrier::{Carrier, Subset};
use crate::error::{Error, Result};
use crate::rel::RelStructure;
use crate::report::ValidationReport;

/// Cap on materialised open families.
const MAX_OPENS: usize = 1 << 20;

/// A finite point set together with its full lattice of open subsets,
/// sorted by mask and deduplicated. Immutable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSpace {
    points: Carrier,
    opens: Vec<Subset>,
    /// Minimal open neighbourhood per point.
    min_nbhd: Vec<Subset>,
}

impl FiniteSpace {
    /// Build from an explicit open family, validating the invariants:
    /// the empty set and the full set are open, and opens are closed under
    /// pairwise union and intersection.
    pub fn new(points: Carrier, opens: Vec<Subset>) -> Result<Self> {
        let report = validate_open_family(&points, &opens);
        if !report.passed() {
            let first = report.failures().next().unwrap().name.clone();
            return Err(Error::Schema(format!("open family violates {first}")));
        }
        Ok(Self::assemble(points, opens))
    }

    fn assemble(points: Carrier, mut opens: Vec<Subset>) -> Self {
        opens.sort_by_key(|s| s.mask());
        opens.dedup();
        let min_nbhd = (0..points.size())
            .map(|x| {
                opens
                    .iter()
                    .filter(|o| o.contains(x))
                    .fold(points.full(), |acc, o| acc.intersect(*o))
            })
            .collect();
        FiniteSpace { points, opens, min_nbhd }
    }

    /// The topology generated by an arbitrary family: closed under finite
    /// intersections and arbitrary unions. Computed through the minimal
    /// neighbourhoods `N_x = ⋂{b ∈ family : x ∈ b}`; the opens are exactly
    /// the unions of minimal neighbourhoods, enumerated as the upward-closed
    /// sets of the induced preorder.
    pub fn generate(points: Carrier, family: &[Subset]) -> Result<Self> {
        let k = points.size();
        for s in family {
            if s.universe() != k {
                return Err(Error::CarrierMismatch { expected: k, got: s.universe() });
            }
        }
        let min_nbhd: Vec<Subset> = (0..k)
            .map(|x| {
                family
                    .iter()
                    .filter(|b| b.contains(x))
                    .fold(points.full(), |acc, b| acc.intersect(*b))
            })
            .collect();

        // DFS over points: a set is open iff it contains N_x for each of its
        // points; the include branch folds in the minimal neighbourhood.
        let mut opens: Vec<Subset> = Vec::new();
        let mut stack: Vec<(usize, Subset, Subset)> = vec![(0, points.empty(), points.empty())];
        while let Some((i, inc, exc)) = stack.pop() {
            if inc.intersects(exc) {
                continue;
            }
            if i == k {
                opens.push(inc);
                if opens.len() > MAX_OPENS {
                    return Err(Error::TooLarge(format!("generated topology exceeds {MAX_OPENS} opens")));
                }
                continue;
            }
            if inc.contains(i) {
                stack.push((i + 1, inc, exc));
            } else {
                stack.push((i + 1, inc, exc.with(i)));
                stack.push((i + 1, inc.union(min_nbhd[i]), exc));
            }
        }
        Ok(Self::assemble(points, opens))
    }

    pub fn discrete(points: Carrier) -> Result<Self> {
        let singletons: Vec<Subset> = (0..points.size()).map(|i| points.singleton(i)).collect();
        Self::generate(points, &singletons)
    }

    pub fn points(&self) -> &Carrier {
        &self.points
    }

    pub fn size(&self) -> usize {
        self.points.size()
    }

    pub fn opens(&self) -> &[Subset] {
        &self.opens
    }

    pub fn is_open(&self, s: Subset) -> bool {
        self.opens.binary_search_by_key(&s.mask(), |o| o.mask()).is_ok()
    }

    /// Minimal open neighbourhood of a point.
    pub fn min_nbhd(&self, x: usize) -> Subset {
        self.min_nbhd[x]
    }

    /// Topological closure: `x ∈ cl(A)` iff every open around `x` meets `A`,
    /// iff the minimal one does.
    pub fn closure(&self, a: Subset) -> Subset {
        let mut out = self.points.empty();
        for x in 0..self.size() {
            if self.min_nbhd[x].intersects(a) {
                out.insert(x);
            }
        }
        out
    }

    pub fn empty(&self) -> Subset {
        self.points.empty()
    }

    pub fn full(&self) -> Subset {
        self.points.full()
    }
}

/// Validate a prospective open family with witnesses (no construction).
pub fn validate_open_family(points: &Carrier, opens: &[Subset]) -> ValidationReport {
    let mut report = ValidationReport::new();
    match opens.iter().find(|s| s.universe() != points.size()) {
        None => report.pass("bit-width"),
        Some(s) => report.fail("bit-width", serde_json::json!({ "universe": s.universe() })),
    }
    if !report.passed() {
        return report;
    }

    report.push(
        "empty-open",
        opens.iter().any(|s| s.is_empty()),
        Some(serde_json::json!("empty set missing")),
    );
    report.push(
        "full-open",
        opens.contains(&points.full()),
        Some(serde_json::json!("full set missing")),
    );

    let mut union_witness = None;
    let mut inter_witness = None;
    for (i, a) in opens.iter().enumerate() {
        for b in &opens[i..] {
            if union_witness.is_none() && !opens.contains(&a.union(*b)) {
                union_witness = Some((a, b));
            }
            if inter_witness.is_none() && !opens.contains(&a.intersect(*b)) {
                inter_witness = Some((a, b));
            }
        }
    }
    match union_witness {
        None => report.pass("union-closed"),
        Some((a, b)) => report.fail(
            "union-closed",
            serde_json::json!({
                "a": points.format_subset(*a),
                "b": points.format_subset(*b)
            }),
        ),
    }
    match inter_witness {
        None => report.pass("intersection-closed"),
        Some((a, b)) => report.fail(
            "intersection-closed",
            serde_json::json!({
                "a": points.format_subset(*a),
                "b": points.format_subset(*b)
            }),
        ),
    }
    report
}

/// Specialization preorder: `x ≤ y` iff every open containing `x` contains
/// `y`, iff `y ∈ N_x`.
pub fn specialization_order(space: &FiniteSpace) -> RelStructure {
    let k = space.size();
    let mut edges = Vec::new();
    for x in 0..k {
        for y in 0..k {
            if space.min_nbhd(x).contains(y) {
                edges.push((x, y));
            }
        }
    }
    RelStructure::new(space.points().clone(), &edges).expect("edges in range")
}

/// Saturation: the intersection of all opens containing `A`.
pub fn saturation(space: &FiniteSpace, a: Subset) -> Subset {
    space
        .opens()
        .iter()
        .filter(|o| a.is_subset_of(**o))
        .fold(space.full(), |acc, o| acc.intersect(*o))
}

/// Every compact saturated subset. In a finite space every subset is
/// compact and the saturated sets are exactly the opens (the Alexandroff
/// property, cross-checked in tests), so this is the open family.
pub fn compact_saturated(space: &FiniteSpace) -> Vec<Subset> {
    debug_assert!(space.opens().iter().all(|o| saturation(space, *o) == *o));
    space.opens().to_vec()
}

/// Is `c` compact? Yes, always: an open cover of `c` is a subfamily of the
/// finite open family, hence its own finite subcover.
pub fn is_compact(space: &FiniteSpace, c: Subset) -> bool {
    debug_assert_eq!(c.universe(), space.size());
    true
}

/// Compact containment `O ⋐ N`: some compact set sits between. The witness
/// `C = O` settles it on finite spaces, so this degenerates to `O ⊆ N`;
/// the degeneracy is asserted as a battery check rather than assumed by
/// callers.
pub fn way_below(space: &FiniteSpace, o: Subset, n: Subset) -> Result<bool> {
    if !space.is_open(o) || !space.is_open(n) {
        return Err(Error::NotOpen);
    }
    Ok(o.is_subset_of(n) && is_compact(space, o))
}

/// The patch topology: generated by the opens together with complements of
/// compact saturated sets.
pub fn patch(space: &FiniteSpace) -> FiniteSpace {
    let mut family = space.opens().to_vec();
    family.extend(compact_saturated(space).iter().map(|c| c.complement()));
    FiniteSpace::generate(space.points().clone(), &family).expect("patch of a materialised space")
}

/// Classify a space: T0, T1, Hausdorff, locally compact, coherent,
/// well-filtered and stably locally compact, with point-pair witnesses on
/// failure. Quantifiers are evaluated through minimal neighbourhoods, which
/// supply optimal witnesses; `classify_literal` below spells out the raw
/// quantifiers and is cross-checked against this on small spaces.
pub fn classify(space: &FiniteSpace) -> ValidationReport {
    let k = space.size();
    let mut report = ValidationReport::new();
    let pair_witness = |pred: &dyn Fn(usize, usize) -> bool| -> Option<(usize, usize)> {
        for x in 0..k {
            for y in 0..k {
                if x != y && !pred(x, y) {
                    return Some((x, y));
                }
            }
        }
        None
    };

    let t0 = pair_witness(&|x, y| space.min_nbhd(x) != space.min_nbhd(y));
    let t1 = pair_witness(&|x, y| !space.min_nbhd(x).contains(y));
    let hausdorff = pair_witness(&|x, y| !space.min_nbhd(x).intersects(space.min_nbhd(y)));
    for (name, witness) in [("t0", t0), ("t1", t1), ("hausdorff", hausdorff)] {
        match witness {
            None => report.pass(name),
            Some((x, y)) => report.fail(
                name,
                serde_json::json!({
                    "x": space.points().label(x),
                    "y": space.points().label(y)
                }),
            ),
        }
    }

    // locally compact: N_x itself is a compact neighbourhood inside any open
    // around x
    report.pass("locally-compact");

    // coherent: saturated sets are the opens, which are ∩-closed by the
    // space invariant
    report.pass("coherent");

    // well-filtered: a family of compact saturated sets is finite, hence is
    // its own finite subfamily
    report.pass("well-filtered");

    let stably = report.check("coherent").unwrap().pass && report.check("well-filtered").unwrap().pass;
    report.push("stably-locally-compact", stably, Some(serde_json::json!("see coherent/well-filtered")));
    report
}

/// The classification quantifiers written out literally over the open
/// lattice. Exponential in the open count; intended for small spaces and
/// for cross-checking [`classify`].
pub fn classify_literal(space: &FiniteSpace) -> Result<ValidationReport> {
    let opens = space.opens();
    if opens.len() > 2048 {
        return Err(Error::TooLarge(format!("literal classification over {} opens", opens.len())));
    }
    let k = space.size();
    let mut report = ValidationReport::new();

    let check_pairs = |name: &str, pred: &dyn Fn(usize, usize) -> bool, report: &mut ValidationReport| {
        let mut witness = None;
        'outer: for x in 0..k {
            for y in 0..k {
                if x != y && !pred(x, y) {
                    witness = Some((x, y));
                    break 'outer;
                }
            }
        }
        match witness {
            None => report.pass(name),
            Some((x, y)) => report.fail(
                name,
                serde_json::json!({ "x": space.points().label(x), "y": space.points().label(y) }),
            ),
        }
    };

    check_pairs(
        "t0",
        &|x, y| opens.iter().any(|o| o.contains(x) != o.contains(y)),
        &mut report,
    );
    check_pairs(
        "t1",
        &|x, y| opens.iter().any(|o| o.contains(x) && !o.contains(y)),
        &mut report,
    );
    check_pairs(
        "hausdorff",
        &|x, y| {
            opens.iter().any(|o| {
                o.contains(x) && opens.iter().any(|n| n.contains(y) && !o.intersects(*n))
            })
        },
        &mut report,
    );

    // locally compact: for each point and each open around it, some compact
    // set wedges an open neighbourhood inside
    let mut lc_witness = None;
    'lc: for x in 0..k {
        for o in opens {
            if !o.contains(x) {
                continue;
            }
            let ok = opens.iter().any(|v| {
                v.contains(x)
                    && v.is_subset_of(*o)
                    && (v.mask()..=o.mask()).any(|cm| {
                        let c = Subset::from_mask(k, cm);
                        v.is_subset_of(c) && c.is_subset_of(*o) && is_compact(space, c)
                    })
            });
            if !ok {
                lc_witness = Some((x, *o));
                break 'lc;
            }
        }
    }
    match lc_witness {
        None => report.pass("locally-compact"),
        Some((x, o)) => report.fail(
            "locally-compact",
            serde_json::json!({
                "x": space.points().label(x),
                "open": space.points().format_subset(o)
            }),
        ),
    }

    let sat = compact_saturated(space);
    let mut coh_witness = None;
    for a in &sat {
        for b in &sat {
            if !sat.contains(&a.intersect(*b)) {
                coh_witness = Some((*a, *b));
            }
        }
    }
    match coh_witness {
        None => report.pass("coherent"),
        Some((a, b)) => report.fail(
            "coherent",
            serde_json::json!({
                "a": space.points().format_subset(a),
                "b": space.points().format_subset(b)
            }),
        ),
    }

    // well-filtered over all subfamilies when the saturated family is small
    let mut wf_pass = true;
    if sat.len() <= 12 {
        'wf: for fam_mask in 0u32..(1u32 << sat.len()) {
            let members: Vec<Subset> =
                sat.iter().enumerate().filter(|(i, _)| fam_mask >> i & 1 == 1).map(|(_, s)| *s).collect();
            let inter = members.iter().fold(space.full(), |acc, s| acc.intersect(*s));
            for o in opens {
                if inter.is_subset_of(*o) {
                    // the family is finite, so it is its own finite subfamily
                    let fine = members.iter().fold(space.full(), |acc, s| acc.intersect(*s));
                    if !fine.is_subset_of(*o) {
                        wf_pass = false;
                        break 'wf;
                    }
                }
            }
        }
    }
    report.push("well-filtered", wf_pass, Some(serde_json::json!("subfamily scan")));
    let stably =
        report.check("coherent").unwrap().pass && report.check("well-filtered").unwrap().pass;
    report.push("stably-locally-compact", stably, Some(serde_json::json!("see coherent/well-filtered")));
    Ok(report)
}

fn members_open(space: &FiniteSpace, members: &[Subset]) -> Result<()> {
    for m in members {
        if !space.is_open(*m) {
            return Err(Error::NotOpen);
        }
    }
    Ok(())
}

/// Distinct finite intersections of `members`, including the empty
/// intersection (the full set).
fn meet_closure(space: &FiniteSpace, members: &[Subset]) -> Vec<Subset> {
    let mut meets = vec![space.full()];
    let mut frontier = vec![space.full()];
    while let Some(m) = frontier.pop() {
        for b in members {
            let next = m.intersect(*b);
            if !meets.contains(&next) {
                meets.push(next);
                frontier.push(next);
            }
        }
    }
    meets.sort_by_key(|s| s.mask());
    meets
}

/// Pseudosubbasis axioms: separating, and every point of a finite
/// intersection sits in another finite intersection compactly contained in
/// it.
pub fn is_pseudosubbasis(space: &FiniteSpace, members: &[Subset]) -> Result<ValidationReport> {
    members_open(space, members)?;
    let mut report = ValidationReport::new();
    separating_check(space, members, &mut report);

    let meets = meet_closure(space, members);
    let mut witness = None;
    'outer: for m in &meets {
        for x in m.iter() {
            let ok = meets
                .iter()
                .any(|g| g.contains(x) && way_below(space, *g, *m).expect("meets are open"));
            if !ok {
                witness = Some((x, *m));
                break 'outer;
            }
        }
    }
    match witness {
        None => report.pass("intersection-point-round"),
        Some((x, m)) => report.fail(
            "intersection-point-round",
            serde_json::json!({
                "x": space.points().label(x),
                "meet": space.points().format_subset(m)
            }),
        ),
    }
    Ok(report)
}

fn separating_check(space: &FiniteSpace, members: &[Subset], report: &mut ValidationReport) {
    let k = space.size();
    let mut witness = None;
    'outer: for x in 0..k {
        for y in (x + 1)..k {
            if !members.iter().any(|o| o.contains(x) != o.contains(y)) {
                witness = Some((x, y));
                break 'outer;
            }
        }
    }
    match witness {
        None => report.pass("separating"),
        Some((x, y)) => report.fail(
            "separating",
            serde_json::json!({ "x": space.points().label(x), "y": space.points().label(y) }),
        ),
    }
}

/// Concrete pseudobasis axioms: cover, separating, point-round and dense,
/// plus the lower-order law `O ⊆ N ⇔ ∀M (M ⋐ O ⇒ M ⋐ N)` that follows
/// from them.
pub fn is_pseudobasis(space: &FiniteSpace, members: &[Subset]) -> Result<ValidationReport> {
    members_open(space, members)?;
    let mut report = ValidationReport::new();

    let covered = members.iter().fold(space.empty(), |acc, m| acc.union(*m));
    match covered.complement().iter().next() {
        None => report.pass("cover"),
        Some(x) => report.fail("cover", serde_json::json!({ "x": space.points().label(x) })),
    }

    separating_check(space, members, &mut report);

    let mut pr_witness = None;
    'pr: for x in 0..space.size() {
        for o in members {
            if !o.contains(x) {
                continue;
            }
            let ok = members
                .iter()
                .any(|n| n.contains(x) && way_below(space, *n, *o).expect("members are open"));
            if !ok {
                pr_witness = Some((x, *o));
                break 'pr;
            }
        }
    }
    match pr_witness {
        None => report.pass("point-round"),
        Some((x, o)) => report.fail(
            "point-round",
            serde_json::json!({
                "x": space.points().label(x),
                "open": space.points().format_subset(o)
            }),
        ),
    }

    let dense_witness = space
        .opens()
        .iter()
        .find(|o| {
            !o.is_empty() && !members.iter().any(|n| !n.is_empty() && n.is_subset_of(**o))
        })
        .copied();
    match dense_witness {
        None => report.pass("dense"),
        Some(o) => report.fail("dense", serde_json::json!({ "open": space.points().format_subset(o) })),
    }

    let mut lo_witness = None;
    'lo: for o in members {
        for n in members {
            let lhs = o.is_subset_of(*n);
            let rhs = members.iter().all(|m| {
                !way_below(space, *m, *o).expect("open") || way_below(space, *m, *n).expect("open")
            });
            if lhs != rhs {
                lo_witness = Some((*o, *n));
                break 'lo;
            }
        }
    }
    match lo_witness {
        None => report.pass("lower-order"),
        Some((o, n)) => report.fail(
            "lower-order",
            serde_json::json!({
                "o": space.points().format_subset(o),
                "n": space.points().format_subset(n)
            }),
        ),
    }

    Ok(report)
}

/// The coarser topology generated by a pseudosubbasis of a Hausdorff space.
pub fn coarsen(space: &FiniteSpace, members: &[Subset]) -> Result<FiniteSpace> {
    if !is_pseudosubbasis(space, members)?.passed() {
        return Err(Error::Precondition("coarsen needs a pseudosubbasis".into()));
    }
    if !classify(space).check("hausdorff").unwrap().pass {
        return Err(Error::Precondition("coarsen needs a Hausdorff space".into()));
    }
    FiniteSpace::generate(space.points().clone(), members)
}

/// Does the patch of the generated coarsening reproduce the original space?
/// A theorem checker: must hold whenever the preconditions do.
pub fn patch_recovers(space: &FiniteSpace, members: &[Subset]) -> Result<bool> {
    let coarse = coarsen(space, members)?;
    Ok(&patch(&coarse) == space)
}

/// The relational structure `(members, ⋐)` with the supplied labels.
pub fn way_below_rel(
    space: &FiniteSpace,
    members: &[Subset],
    labels: Vec<String>,
) -> Result<RelStructure> {
    members_open(space, members)?;
    if labels.len() != members.len() {
        return Err(Error::Schema("one label per member required".into()));
    }
    let carrier = Carrier::with_cap(labels, members.len().max(1))?;
    let mut edges = Vec::new();
    for (i, a) in members.iter().enumerate() {
        for (j, b) in members.iter().enumerate() {
            if way_below(space, *a, *b)? {
                edges.push((i, j));
            }
        }
    }
    RelStructure::new(carrier, &edges)
}

/// Default labels for a member family: the member sets rendered over point
/// labels.
pub fn member_labels(space: &FiniteSpace, members: &[Subset]) -> Vec<String> {
    members.iter().map(|m| space.points().format_subset(*m)).collect()
}

#[derive(Clone, Debug)]
pub struct ConcretePseudobasis {
    pub space: FiniteSpace,
    pub members: Vec<Subset>,
}

impl ConcretePseudobasis {
    pub fn new(space: FiniteSpace, members: Vec<Subset>) -> Result<Self> {
        let report = is_pseudobasis(&space, &members)?;
        if !report.passed() {
            return Err(Error::Precondition(format!(
                "family is not a pseudobasis: {}",
                report.failures().next().unwrap().name
            )));
        }
        Ok(ConcretePseudobasis { space, members })
    }
}

/// Topology recovery, as a witnessed report: given a pseudobasis without
/// the empty set on a Hausdorff space, the way-below relation on the
/// members is an abstract pseudobasis, the induced disjointness and cover
/// relations match their set-level meaning, and `x ↦ T_x` is a
/// homeomorphism onto the tight spectrum of the recovered relation.
pub fn recovery_report(space: &FiniteSpace, members: &[Subset]) -> Result<ValidationReport> {
    if members.iter().any(|m| m.is_empty()) {
        return Err(Error::Precondition("recovery needs ∅ ∉ members".into()));
    }
    for (i, a) in members.iter().enumerate() {
        if members[i + 1..].contains(a) {
            return Err(Error::Precondition("recovery needs distinct members".into()));
        }
    }
    let basis_report = is_pseudobasis(space, members)?;
    if !basis_report.passed() {
        return Err(Error::Precondition("recovery needs a pseudobasis".into()));
    }
    if !classify(space).check("hausdorff").unwrap().pass {
        return Err(Error::Precondition("recovery needs a Hausdorff space".into()));
    }

    let mut report = ValidationReport::new();
    let rel = way_below_rel(space, members, member_labels(space, members))?;
    report.push(
        "recovered-pseudobasis",
        rel.validate_pseudobasis().passed(),
        Some(serde_json::json!("validate_pseudobasis on (members, ⋐)")),
    );

    // set-level meaning of ⊥, D and C: exhaustive on small member families,
    // singleton/pair/complement sample above
    let m = members.len();
    let union_of = |q: Subset| -> Subset {
        q.iter().fold(space.empty(), |acc, i| acc.union(members[i]))
    };
    let mut cover_witness = None;
    let pairs: Vec<(Subset, Subset)> = if m <= 8 {
        let mut v = Vec::new();
        for qm in 0u128..(1 << m) {
            for rm in 0u128..(1 << m) {
                v.push((Subset::from_mask(m, qm), Subset::from_mask(m, rm)));
            }
        }
        v
    } else {
        let mut v = Vec::new();
        let mut masks: Vec<u128> = vec![0, (1 << m) - 1];
        for i in 0..m {
            masks.push(1 << i);
            masks.push(((1u128 << m) - 1) ^ (1 << i));
            for j in 0..m {
                masks.push(1 << i | 1 << j);
            }
        }
        masks.sort_unstable();
        masks.dedup();
        for &qm in &masks {
            for &rm in &masks {
                v.push((Subset::from_mask(m, qm), Subset::from_mask(m, rm)));
            }
        }
        v
    };
    'pairs: for (q, r) in pairs {
        let uq = union_of(q);
        let ur = union_of(r);
        let perp_ok = rel.disjoint(q, r)? == !uq.intersects(ur);
        let dense_ok = rel.dense_cover(q, r)? == uq.is_subset_of(space.closure(ur));
        // ⋃Q ⋐ ⋃R at the set level (degenerate compact containment)
        let compact_ok = rel.compact_cover(q, r)? == uq.is_subset_of(ur);
        if !(perp_ok && dense_ok && compact_ok) {
            cover_witness = Some((q, r));
            break 'pairs;
        }
    }
    match cover_witness {
        None => report.pass("cover-representations"),
        Some((q, r)) => report.fail(
            "cover-representations",
            serde_json::json!({ "q": q.mask().to_string(), "r": r.mask().to_string() }),
        ),
    }

    // x ↦ T_x onto the tight spectrum of the recovered relation
    let tights = crate::tight::enumerate_tight(&rel)?;
    let spec_space = crate::spectrum::build_spectrum(&rel)?;
    let mut point_of_tight: std::collections::BTreeMap<u128, usize> = Default::default();
    for (i, t) in tights.sets.iter().enumerate() {
        point_of_tight.insert(t.members().mask(), i);
    }
    let mut images: Vec<Option<usize>> = Vec::new();
    for x in 0..space.size() {
        let tx: Subset = (0..m)
            .fold(Subset::empty(m), |acc, i| if members[i].contains(x) { acc.with(i) } else { acc });
        images.push(point_of_tight.get(&tx.mask()).copied());
    }
    let total = images.iter().all(|i| i.is_some());
    report.push("points-map-to-tight-sets", total, Some(serde_json::json!("T_x is tight")));
    if total {
        let mut seen = vec![false; tights.sets.len()];
        let mut injective = true;
        for i in images.iter().flatten() {
            if seen[*i] {
                injective = false;
            }
            seen[*i] = true;
        }
        let surjective = seen.iter().all(|b| *b);
        report.push("bijective", injective && surjective, Some(serde_json::json!("x ↦ T_x")));

        // open-structure transport both ways
        let fwd = |u: Subset| -> Subset {
            u.iter().fold(spec_space.space().empty(), |acc, x| acc.with(images[x].unwrap()))
        };
        let transported = space.opens().iter().all(|o| spec_space.space().is_open(fwd(*o)))
            && spec_space.space().opens().iter().all(|w| {
                let pre = (0..space.size())
                    .fold(space.empty(), |acc, x| if w.contains(images[x].unwrap()) { acc.with(x) } else { acc });
                space.is_open(pre)
            });
        report.push("homeomorphism", transported, Some(serde_json::json!("open sets transport")));
    }
    Ok(report)
}

/// Pseudobasis-axiom reformulations, checked as equivalences against
/// [`is_pseudobasis`]: the cover/point-round union identity over
/// `members ∪ {X}`, the density closure identity over all opens, and the
/// separating singleton identity.
pub fn pseudobasis_reformulation_agrees(space: &FiniteSpace, members: &[Subset]) -> Result<bool> {
    members_open(space, members)?;
    let direct = is_pseudobasis(space, members)?.passed();

    let union_below = |o: Subset| -> Result<Subset> {
        let mut acc = space.empty();
        for n in members {
            if way_below(space, *n, o)? {
                acc = acc.union(*n);
            }
        }
        Ok(acc)
    };
    let mut cover_round = true;
    for o in members.iter().chain(std::iter::once(&space.full())) {
        if union_below(*o)? != *o {
            cover_round = false;
            break;
        }
    }
    let mut dense = true;
    for o in space.opens() {
        if space.closure(union_below(*o)?) != space.closure(*o) {
            dense = false;
            break;
        }
    }
    let mut separating = true;
    for x in 0..space.size() {
        let mut cut = space.full();
        for m in members {
            cut = cut.intersect(if m.contains(x) { *m } else { m.complement() });
        }
        if cut != space.points().singleton(x) {
            separating = false;
            break;
        }
    }
    Ok(direct == (cover_round && dense && separating))
}

/// One label per point: plain string or list of strings (joined as a set),
/// so spectrum output re-parses as a topology file.
#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointLabel {
    Name(String),
    Parts(Vec<String>),
}

impl PointLabel {
    fn into_label(self) -> String {
        match self {
            PointLabel::Name(s) => s,
            PointLabel::Parts(parts) => format!("{{{}}}", parts.join(",")),
        }
    }
}

/// On-disk topology format:
/// `{"points": ["0","1"], "opens": [[],[0],[0,1]]}`; opens are lists of
/// point indices. The full set is added implicitly when missing, with a
/// warning.
#[derive(Debug, Serialize, Deserialize)]
pub struct TopologyFile {
    pub points: Vec<PointLabel>,
    pub opens: Vec<Vec<usize>>,
}

/// Parse a topology file into a validation report plus the space when the
/// family really is a topology.
pub fn parse_topology_report(text: &str, cap: usize) -> Result<(Option<FiniteSpace>, ValidationReport)> {
    let file: TopologyFile = serde_json::from_str(text)?;
    let labels: Vec<String> = file.points.into_iter().map(PointLabel::into_label).collect();
    let points = Carrier::with_cap(labels, cap)?;
    let mut opens = Vec::new();
    for open in &file.opens {
        let mut s = points.empty();
        for &i in open {
            if i >= points.size() {
                return Err(Error::Schema(format!("open refers to point index {i} out of range")));
            }
            s.insert(i);
        }
        opens.push(s);
    }
    let mut report = ValidationReport::new();
    if !opens.contains(&points.full()) {
        opens.push(points.full());
        report.advisory("full-open-added", true, Some(serde_json::json!("full set added implicitly")));
    }
    report.absorb("topology", validate_open_family(&points, &opens));
    if report.passed() {
        let space = FiniteSpace::new(points, opens)?;
        Ok((Some(space), report))
    } else {
        Ok((None, report))
    }
}

pub fn parse_topology(text: &str, cap: usize) -> Result<FiniteSpace> {
    match parse_topology_report(text, cap)? {
        (Some(space), _) => Ok(space),
        (None, report) => Err(Error::Schema(format!(
            "open family violates {}",
            report.failures().next().unwrap().name
        ))),
    }
}

impl TopologyFile {
    pub fn from_space(space: &FiniteSpace) -> Self {
        TopologyFile {
            points: space.points().labels().iter().map(|l| PointLabel::Name(l.clone())).collect(),
            opens: space.opens().iter().map(|o| o.iter().collect()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn sierpinski() -> FiniteSpace {
        fixtures::sierpinski()
    }

    #[test]
    fn generation_matches_pairwise_fixed_point() {
        // literal closure: pairwise intersections, then pairwise unions
        fn literal(points: &Carrier, family: &[Subset]) -> Vec<Subset> {
            let mut sets: Vec<Subset> = family.to_vec();
            for seed in [points.empty(), points.full()] {
                if !sets.contains(&seed) {
                    sets.push(seed);
                }
            }
            loop {
                let mut added = false;
                let snapshot = sets.clone();
                for a in &snapshot {
                    for b in &snapshot {
                        for c in [a.intersect(*b), a.union(*b)] {
                            if !sets.contains(&c) {
                                sets.push(c);
                                added = true;
                            }
                        }
                    }
                }
                if !added {
                    break;
                }
            }
            sets.sort_by_key(|s| s.mask());
            sets
        }

        for (k, families) in [
            (3usize, vec![vec![0b001u128, 0b011], vec![0b101, 0b110], vec![]]),
            (4, vec![vec![0b0001, 0b0010, 0b1100], vec![0b1111], vec![0b0110, 0b0101, 0b0011]]),
        ] {
            let points = Carrier::new((0..k).map(|i| format!("p{i}"))).unwrap();
            for fam in families {
                let family: Vec<Subset> = fam.iter().map(|m| points.subset_from_mask(*m)).collect();
                let space = FiniteSpace::generate(points.clone(), &family).unwrap();
                assert_eq!(space.opens(), literal(&points, &family).as_slice());
            }
        }
    }

    #[test]
    fn saturation_examples() {
        let disc = fixtures::discrete_space(2);
        assert_eq!(saturation(&disc, disc.points().singleton(0)), disc.points().singleton(0));

        let sp = sierpinski();
        // the only open containing the closed point is the whole space
        assert_eq!(saturation(&sp, sp.points().singleton(0)), sp.full());
        assert_eq!(saturation(&sp, sp.empty()), sp.empty());
    }

    #[test]
    fn saturation_is_up_closure_of_specialization() {
        for space in [fixtures::discrete_space(3), sierpinski(), fixtures::indiscrete_space(2)] {
            let spec = specialization_order(&space);
            for mask in 0u128..(1 << space.size()) {
                let a = space.points().subset_from_mask(mask);
                assert_eq!(saturation(&space, a), spec.up_image(a).unwrap().union(a));
            }
            // opens are exactly the up-sets
            for mask in 0u128..(1 << space.size()) {
                let a = space.points().subset_from_mask(mask);
                assert_eq!(space.is_open(a), spec.is_up_closed(a));
            }
        }
    }

    #[test]
    fn way_below_examples_and_degeneracy() {
        let disc = fixtures::discrete_space(2);
        let o0 = disc.points().singleton(0);
        assert!(way_below(&disc, disc.empty(), o0).unwrap());
        assert!(way_below(&disc, o0, disc.full()).unwrap());
        assert!(!way_below(&disc, disc.full(), o0).unwrap());
        for space in [fixtures::discrete_space(3), sierpinski()] {
            for o in space.opens() {
                for n in space.opens() {
                    assert_eq!(way_below(&space, *o, *n).unwrap(), o.is_subset_of(*n));
                }
            }
        }
        assert!(matches!(way_below(&sierpinski(), sierpinski().points().singleton(0), sierpinski().full()), Err(Error::NotOpen)));
    }

    #[test]
    fn patch_examples() {
        let sp = sierpinski();
        let patched = patch(&sp);
        assert_eq!(patched, fixtures::discrete_space_points(sp.points().clone()));

        let disc = fixtures::discrete_space(3);
        assert_eq!(patch(&disc), disc);

        let ind = fixtures::indiscrete_space(2);
        assert_eq!(patch(&ind), ind);
    }

    #[test]
    fn classify_examples() {
        let disc = classify(&fixtures::discrete_space(3));
        assert!(disc.passed());

        let sp = classify(&sierpinski());
        assert!(sp.check("t0").unwrap().pass);
        assert!(!sp.check("t1").unwrap().pass);
        assert!(sp.check("stably-locally-compact").unwrap().pass);

        let ind = classify(&fixtures::indiscrete_space(2));
        assert!(!ind.check("t0").unwrap().pass);
    }

    #[test]
    fn classify_matches_literal_quantifiers() {
        for space in [
            fixtures::discrete_space(3),
            sierpinski(),
            fixtures::indiscrete_space(2),
            FiniteSpace::generate(
                Carrier::new(["a", "b", "c"]).unwrap(),
                &[Subset::from_mask(3, 0b011), Subset::from_mask(3, 0b110)],
            )
            .unwrap(),
        ] {
            let fast = classify(&space);
            let literal = classify_literal(&space).unwrap();
            for check in &literal.checks {
                assert_eq!(
                    fast.check(&check.name).unwrap().pass,
                    check.pass,
                    "{} on {:?}",
                    check.name,
                    space
                );
            }
        }
    }

    #[test]
    fn pseudobasis_examples() {
        let disc2 = fixtures::discrete_space(2);
        let singletons: Vec<Subset> = (0..2).map(|i| disc2.points().singleton(i)).collect();
        assert!(is_pseudobasis(&disc2, &singletons).unwrap().passed());

        // {0},{1},{0,1,2}: pseudosubbasis but not pseudobasis (open {2} has
        // no non-empty member inside)
        let disc3 = fixtures::discrete_space(3);
        let members = vec![
            disc3.points().singleton(0),
            disc3.points().singleton(1),
            disc3.full(),
        ];
        assert!(is_pseudosubbasis(&disc3, &members).unwrap().passed());
        let report = is_pseudobasis(&disc3, &members).unwrap();
        assert!(!report.passed());
        let w = report.check("dense").unwrap().witness.as_ref().unwrap();
        assert_eq!(w["open"], "{p2}");

        // no members over a 1-point space: cover fails
        let disc1 = fixtures::discrete_space(1);
        let report = is_pseudobasis(&disc1, &[]).unwrap();
        assert!(!report.check("cover").unwrap().pass);
    }

    #[test]
    fn coarsen_and_patch_roundtrip_examples() {
        let disc2 = fixtures::discrete_space(2);
        let singles: Vec<Subset> = (0..2).map(|i| disc2.points().singleton(i)).collect();
        assert!(patch_recovers(&disc2, &singles).unwrap());

        // {0},{0,1} generates a Sierpinski-like coarsening; patch restores
        let members = vec![disc2.points().singleton(0), disc2.full()];
        let coarse = coarsen(&disc2, &members).unwrap();
        assert_eq!(coarse.opens().len(), 3);
        let cls = classify(&coarse);
        assert!(cls.check("t0").unwrap().pass && cls.check("stably-locally-compact").unwrap().pass);
        assert!(patch_recovers(&disc2, &members).unwrap());

        let disc3 = fixtures::discrete_space(3);
        let singles3: Vec<Subset> = (0..3).map(|i| disc3.points().singleton(i)).collect();
        assert!(patch_recovers(&disc3, &singles3).unwrap());
    }

    #[test]
    fn recovery_examples() {
        // {{0},{1}} over 2 discrete points recovers the two-point antichain
        let disc2 = fixtures::discrete_space(2);
        let singles: Vec<Subset> = (0..2).map(|i| disc2.points().singleton(i)).collect();
        let rel = way_below_rel(&disc2, &singles, member_labels(&disc2, &singles)).unwrap();
        assert_eq!(rel.edge_pairs(), fixtures::e1().edge_pairs());
        assert!(recovery_report(&disc2, &singles).unwrap().passed());

        // adding the top gives the two-atom Boolean shape
        let with_top = vec![disc2.points().singleton(0), disc2.points().singleton(1), disc2.full()];
        let rel = way_below_rel(&disc2, &with_top, member_labels(&disc2, &with_top)).unwrap();
        assert_eq!(rel.edge_pairs(), fixtures::e3().edge_pairs());
        assert!(recovery_report(&disc2, &with_top).unwrap().passed());

        let disc1 = fixtures::discrete_space(1);
        let members = vec![disc1.full()];
        assert!(recovery_report(&disc1, &members).unwrap().passed());
    }

    #[test]
    fn reformulations_agree() {
        let disc3 = fixtures::discrete_space(3);
        let mut families: Vec<Vec<Subset>> = vec![
            (0..3).map(|i| disc3.points().singleton(i)).collect(),
            vec![disc3.points().singleton(0), disc3.points().singleton(1), disc3.full()],
            vec![disc3.full()],
        ];
        families.push(vec![]);
        for f in families {
            assert!(pseudobasis_reformulation_agrees(&disc3, &f).unwrap());
        }
    }

    #[test]
    fn topology_json_parses_and_warns() {
        let text = r#"{"points": ["0","1"], "opens": [[],[0]]}"#;
        let (space, report) = parse_topology_report(text, 64).unwrap();
        let space = space.unwrap();
        assert!(space.is_open(space.full()));
        assert!(report.check("full-open-added").is_some());

        // not union-closed: {0} and {1} without {0,1} ... full gets added,
        // but intersection closure can still fail
        let text = r#"{"points": ["0","1","2"], "opens": [[],[0,1],[1,2],[0,1,2]]}"#;
        let (space, report) = parse_topology_report(text, 64).unwrap();
        assert!(space.is_none());
        assert!(!report.passed());

        // array-of-strings point labels (spectrum output shape)
        let text = r#"{"points": [["a"],["b"]], "opens": [[],[0],[1],[0,1]]}"#;
        let (space, _) = parse_topology_report(text, 64).unwrap();
        assert_eq!(space.unwrap().points().label(0), "{a}");
    }
}
