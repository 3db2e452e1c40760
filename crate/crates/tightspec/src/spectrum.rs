//! The tight spectrum of an abstract pseudobasis as a finite topological
//! space, with the basic opens `O_F^G`, the emptiness characterization and
//! the representation checks for the dense and compact covers.
//!
//! Points are the non-empty tight subsets in subset-index order. For each
//! carrier element `p`, `O_p` collects the points containing `p` and `O^g`
//! the points whose complement compactly covers `{g}`; the topology is
//! generated by both families. The spectrum of a finite pseudobasis is
//! Hausdorff and hence discrete, which is asserted during construction
//! rather than assumed.
//!
//! On finite carriers the dense and compact covers coincide (the finite
//! interpolant `R^≻` always exists), so the closure and compact-containment
//! representations collapse to plain containment in the discrete spectrum.
//! The representation suite asserts this degeneracy explicitly.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::carrier::{Carrier, Subset};
use crate::error::{Error, Result};
use crate::fintop::{self, ConcretePseudobasis, FiniteSpace};
use crate::rel::{CoverKind, RelStructure};
use crate::report::ValidationReport;
use crate::tight::{enumerate_tight, maximal_round_centred, TightSet};

/// Exhaustive subset-pair quantifiers are used up to this carrier size; the
/// battery instances stay below it.
const EXHAUSTIVE_LIMIT: usize = 10;

/// The tight spectrum of a pseudobasis, materialised as a finite space.
#[derive(Clone, Debug)]
pub struct SpectrumSpace {
    rel: RelStructure,
    points: Vec<TightSet>,
    space: FiniteSpace,
    /// `O_p` per carrier element, as a subset of the points.
    o_elem: Vec<Subset>,
    /// `O^g` per carrier element.
    o_up: Vec<Subset>,
}

impl SpectrumSpace {
    pub fn rel(&self) -> &RelStructure {
        &self.rel
    }

    pub fn points(&self) -> &[TightSet] {
        &self.points
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn o_elem(&self, p: usize) -> Subset {
        self.o_elem[p]
    }

    pub fn o_up_elem(&self, g: usize) -> Subset {
        self.o_up[g]
    }
}

/// Build the tight spectrum of a validated pseudobasis.
pub fn build_spectrum(rel: &RelStructure) -> Result<SpectrumSpace> {
    if !rel.validate_pseudobasis().passed() {
        return Err(Error::Precondition("build_spectrum needs an abstract pseudobasis".into()));
    }
    let tights = enumerate_tight(rel)?;
    let points = tights.sets;
    let k = points.len();
    let labels: Vec<String> = points.iter().map(|t| rel.carrier().format_subset(t.members())).collect();
    let point_carrier = if k == 0 {
        // an empty spectrum cannot occur for a non-empty pseudobasis: every
        // O_p is non-empty; keep the error honest anyway
        return Err(Error::Precondition("pseudobasis has an empty tight spectrum".into()));
    } else {
        Carrier::with_cap(labels, k.max(1))?
    };

    let n = rel.size();
    let mut o_elem = vec![Subset::empty(k); n];
    let mut o_up = vec![Subset::empty(k); n];
    for (i, t) in points.iter().enumerate() {
        for p in 0..n {
            if t.members().contains(p) {
                o_elem[p].insert(i);
            }
            let g = rel.carrier().singleton(p);
            if rel.compact_cover(g, t.members().complement())? {
                o_up[p].insert(i);
            }
        }
    }

    let mut subbasis = o_elem.clone();
    subbasis.extend(o_up.iter().copied());
    let space = FiniteSpace::generate(point_carrier, &subbasis)?;

    // Hausdorff forces discreteness on a finite space; assert both.
    let cls = fintop::classify(&space);
    if !cls.check("hausdorff").unwrap().pass {
        return Err(Error::Precondition("tight spectrum failed the Hausdorff check".into()));
    }
    for i in 0..k {
        if !space.is_open(space.points().singleton(i)) {
            return Err(Error::Precondition("finite Hausdorff spectrum must be discrete".into()));
        }
    }

    Ok(SpectrumSpace { rel: rel.clone(), points, space, o_elem, o_up })
}

/// The basic open `O_F^G = {T : F ⊆ T and G C P∖T}` as a set of points.
pub fn basic_open(spec: &SpectrumSpace, f: Subset, g: Subset) -> Result<Subset> {
    let rel = &spec.rel;
    if f.universe() != rel.size() || g.universe() != rel.size() {
        return Err(Error::CarrierMismatch { expected: rel.size(), got: f.universe() });
    }
    let mut out = Subset::empty(spec.points.len());
    for (i, t) in spec.points.iter().enumerate() {
        if f.is_subset_of(t.members()) && rel.compact_cover(g, t.members().complement())? {
            out.insert(i);
        }
    }
    Ok(out)
}

/// `O^Q` for arbitrary `Q`, by the direct definition `Q C P∖T`.
pub fn o_up_set(spec: &SpectrumSpace, q: Subset) -> Result<Subset> {
    let mut out = Subset::empty(spec.points.len());
    for (i, t) in spec.points.iter().enumerate() {
        if spec.rel.compact_cover(q, t.members().complement())? {
            out.insert(i);
        }
    }
    Ok(out)
}

/// `O^Q` via the union formula `⋃ {O^G : G finite, Q D G}`.
pub fn o_up_set_union_formula(spec: &SpectrumSpace, q: Subset) -> Result<Subset> {
    let n = spec.rel.size();
    let mut out = Subset::empty(spec.points.len());
    for mask in 0u128..(1u128 << n) {
        let g = spec.rel.carrier().subset_from_mask(mask);
        if spec.rel.dense_cover(q, g)? {
            out = out.union(basic_open(spec, spec.rel.carrier().empty(), g)?);
        }
    }
    Ok(out)
}

/// Emptiness characterization of `O_F^G`: empty exactly when every compact
/// cover of `G` also compactly covers `F̂`. A theorem checker; must return
/// true on every input.
pub fn check_empty_characterization(spec: &SpectrumSpace, f: Subset, g: Subset) -> Result<bool> {
    let rel = &spec.rel;
    let empty = basic_open(spec, f, g)?.is_empty();
    let fm = rel.formal_meet(f)?;
    let mut covers_transfer = true;
    for mask in 0u128..(1u128 << rel.size()) {
        let h = rel.carrier().subset_from_mask(mask);
        if rel.compact_cover(g, h)? && !rel.compact_cover(fm, h)? {
            covers_transfer = false;
            break;
        }
    }
    Ok(empty == covers_transfer)
}

fn union_of(spec: &SpectrumSpace, q: Subset) -> Subset {
    q.iter().fold(Subset::empty(spec.points.len()), |acc, p| acc.union(spec.o_elem[p]))
}

/// Subset pairs to quantify over: exhaustive for small carriers, a
/// structured sample (singletons, pairs, complements, empty, full) above.
fn subset_pairs(n: usize) -> Vec<(u128, u128)> {
    let mut masks: Vec<u128> = if n <= EXHAUSTIVE_LIMIT {
        (0..(1u128 << n)).collect()
    } else {
        let full = (1u128 << n) - 1;
        let mut v = vec![0, full];
        for i in 0..n {
            v.push(1 << i);
            v.push(full ^ (1 << i));
            for j in 0..n {
                v.push(1 << i | 1 << j);
            }
        }
        v.sort_unstable();
        v.dedup();
        v
    };
    masks.dedup();
    let mut out = Vec::with_capacity(masks.len() * masks.len());
    for &a in &masks {
        for &b in &masks {
            out.push((a, b));
        }
    }
    out
}

/// Verify every representation proposition of the spectrum on this
/// instance, with witnesses. All checks are theorems: a failure signals a
/// defect, and the battery treats it as a hard error.
pub fn representation_suite(spec: &SpectrumSpace) -> Result<ValidationReport> {
    let rel = &spec.rel;
    let n = rel.size();
    let carrier = rel.carrier();
    let mut report = ValidationReport::new();

    // O_F^G factors as the intersection of the subbasic opens
    let mut witness = None;
    for (fm, gm) in subset_pairs(n) {
        let f = carrier.subset_from_mask(fm);
        let g = carrier.subset_from_mask(gm);
        let direct = basic_open(spec, f, g)?;
        let mut factored = Subset::full(spec.points.len());
        for p in f.iter() {
            factored = factored.intersect(spec.o_elem[p]);
        }
        for p in g.iter() {
            factored = factored.intersect(spec.o_up[p]);
        }
        if direct != factored {
            witness = Some((fm, gm));
            break;
        }
    }
    push_pair(&mut report, "ofg-factorization", witness);

    // O_∅^∅ is the whole spectrum
    let all = basic_open(spec, carrier.empty(), carrier.empty())?;
    report.push(
        "ofg-empty-indices-full",
        all == Subset::full(spec.points.len()),
        Some(serde_json::json!("O with empty F,G")),
    );

    // emptiness characterization
    let mut witness = None;
    for (fm, gm) in subset_pairs(n) {
        if !check_empty_characterization(spec, carrier.subset_from_mask(fm), carrier.subset_from_mask(gm))? {
            witness = Some((fm, gm));
            break;
        }
    }
    push_pair(&mut report, "ofg-empty-characterization", witness);

    // p ⊥ q iff O_p and O_q are disjoint
    let mut witness = None;
    'pq: for p in 0..n {
        for q in 0..n {
            let lhs = rel.disjoint(carrier.singleton(p), carrier.singleton(q))?;
            if lhs != !spec.o_elem[p].intersects(spec.o_elem[q]) {
                witness = Some((1u128 << p, 1u128 << q));
                break 'pq;
            }
        }
    }
    push_pair(&mut report, "p-perp-q", witness);

    // every O_p is non-empty
    let empty_op = (0..n).find(|&p| spec.o_elem[p].is_empty());
    match empty_op {
        None => report.pass("o-p-nonempty"),
        Some(p) => report.fail("o-p-nonempty", serde_json::json!({ "p": carrier.label(p) })),
    }

    // F̂ D G forces O_F^G to be empty
    let mut witness = None;
    for (fm, gm) in subset_pairs(n) {
        let f = carrier.subset_from_mask(fm);
        let g = carrier.subset_from_mask(gm);
        let fmeet = rel.formal_meet(f)?;
        if rel.dense_cover(fmeet, g)? && !basic_open(spec, f, g)?.is_empty() {
            witness = Some((fm, gm));
            break;
        }
    }
    push_pair(&mut report, "f-dense-g-empty", witness);

    // dense-cover representation via closures, compact-cover representation
    // via compact containment, for meets of F against arbitrary Q, and for
    // arbitrary R against Q; plus the finite D ⇔ C degeneracy
    let mut fdcq = None;
    let mut fccq = None;
    let mut rdq = None;
    let mut crep = None;
    let mut degenerate = None;
    for (am, bm) in subset_pairs(n) {
        let a = carrier.subset_from_mask(am);
        let b = carrier.subset_from_mask(bm);
        let o_a = union_of(spec, a);
        let o_b = union_of(spec, b);
        let meet_a = rel.formal_meet(a)?;
        let o_meet = basic_open(spec, a, carrier.empty())?;

        if fdcq.is_none()
            && rel.dense_cover(meet_a, b)? != o_meet.is_subset_of(spec.space.closure(o_b))
        {
            fdcq = Some((am, bm));
        }
        if fccq.is_none()
            && rel.compact_cover(meet_a, b)? != fintop::way_below(&spec.space, o_meet, o_b)?
        {
            fccq = Some((am, bm));
        }
        if rdq.is_none() && rel.dense_cover(a, b)? != o_a.is_subset_of(spec.space.closure(o_b)) {
            rdq = Some((am, bm));
        }
        if crep.is_none() && rel.compact_cover(a, b)? != fintop::way_below(&spec.space, o_a, o_b)? {
            crep = Some((am, bm));
        }
        if degenerate.is_none() && rel.dense_cover(a, b)? != rel.compact_cover(a, b)? {
            degenerate = Some((am, bm));
        }
    }
    push_pair(&mut report, "f-dense-q-closure", fdcq);
    push_pair(&mut report, "f-compact-q-waybelow", fccq);
    push_pair(&mut report, "r-dense-q", rdq);
    push_pair(&mut report, "r-compact-q", crep);
    push_pair(&mut report, "dense-equals-compact-finite", degenerate);

    // membership in the closure of O_F
    let mut witness = None;
    'tc: for (i, t) in spec.points.iter().enumerate() {
        for fm in 0u128..(1u128 << n) {
            let f = carrier.subset_from_mask(fm);
            let in_closure = spec
                .space
                .closure(basic_open(spec, f, carrier.empty())?)
                .contains(i);
            let not_covered = !rel.meet_cover(
                CoverKind::Compact,
                t.members().union(f),
                t.members().complement(),
            );
            if in_closure != not_covered {
                witness = Some((t.members().mask(), fm));
                break 'tc;
            }
        }
    }
    push_pair(&mut report, "t-in-closure", witness);

    // Hausdorff via an O_s / O^s separating pair
    let mut witness = None;
    'h: for i in 0..spec.points.len() {
        for j in 0..spec.points.len() {
            if i == j {
                continue;
            }
            let separated = (0..n).any(|s| {
                (spec.o_elem[s].contains(i) && spec.o_up[s].contains(j))
                    || (spec.o_elem[s].contains(j) && spec.o_up[s].contains(i))
            });
            if !separated {
                witness = Some((i as u128, j as u128));
                break 'h;
            }
        }
    }
    push_pair(&mut report, "hausdorff-os-oup-pair", witness);

    // local compactness witnessed inside each point: s ≺ t within T with
    // T ∈ O_s ⋐ O_t
    let mut witness = None;
    for (i, t) in spec.points.iter().enumerate() {
        let found = t.members().iter().any(|s| {
            t.members().iter().any(|u| {
                rel.prec(s, u)
                    && spec.o_elem[s].contains(i)
                    && fintop::way_below(&spec.space, spec.o_elem[s], spec.o_elem[u]).unwrap_or(false)
            })
        });
        if !found {
            witness = Some((t.members().mask(), 0));
            break;
        }
    }
    push_pair(&mut report, "locally-compact-witness", witness);

    // maximal round centred subsets are dense in the spectrum
    let maximal = maximal_round_centred(rel)?;
    let mut max_points = Subset::empty(spec.points.len());
    for (i, t) in spec.points.iter().enumerate() {
        if maximal.contains(&t.members()) {
            max_points.insert(i);
        }
    }
    report.push(
        "max-round-centred-dense",
        spec.space.closure(max_points) == Subset::full(spec.points.len()),
        Some(serde_json::json!("closure of maximal round centred points")),
    );

    // discreteness (finite Hausdorff)
    let discrete = (0..spec.points.len()).all(|i| spec.space.is_open(spec.space.points().singleton(i)));
    report.push("discrete", discrete, Some(serde_json::json!("every singleton open")));

    // O^Q for arbitrary Q agrees with the union formula
    let mut witness = None;
    for qm in 0u128..(1u128 << n) {
        let q = carrier.subset_from_mask(qm);
        if o_up_set(spec, q)? != o_up_set_union_formula(spec, q)? {
            witness = Some((qm, 0));
            break;
        }
    }
    push_pair(&mut report, "o-up-union-formula", witness);

    // the coarser topology generated by the O_p family alone is T0; it
    // need not be T1, which is recorded but not asserted
    let coarse = FiniteSpace::generate(spec.space.points().clone(), &spec.o_elem)?;
    let cls = fintop::classify(&coarse);
    report.push(
        "coarse-topology-t0",
        cls.check("t0").unwrap().pass,
        Some(serde_json::json!("topology generated by the O_p only")),
    );
    report.advisory("coarse-topology-t1", cls.check("t1").unwrap().pass, None);

    Ok(report)
}

fn push_pair(report: &mut ValidationReport, name: &str, witness: Option<(u128, u128)>) {
    match witness {
        None => report.pass(name),
        Some((a, b)) => report.fail(
            name,
            serde_json::json!({ "first_mask": a.to_string(), "second_mask": b.to_string() }),
        ),
    }
}

/// The family `(O_p)_{p ∈ P}` as a concrete pseudobasis of the spectrum.
pub fn concrete_pseudobasis_of_spectrum(spec: &SpectrumSpace) -> Result<ConcretePseudobasis> {
    ConcretePseudobasis::new(spec.space.clone(), spec.o_elem.clone())
}

/// The abstract structure recovered from `((O_p)_p, ⋐)`, indexed by the
/// original carrier so duplicated opens stay distinguishable. For every
/// pseudobasis this realises the compact cover on singletons; for a
/// separative one it is the original relation again.
pub fn roundtrip_rel(spec: &SpectrumSpace) -> Result<RelStructure> {
    let n = spec.rel.size();
    let mut edges = Vec::new();
    for p in 0..n {
        for q in 0..n {
            if fintop::way_below(&spec.space, spec.o_elem[p], spec.o_elem[q])? {
                edges.push((p, q));
            }
        }
    }
    RelStructure::new(spec.rel.carrier().clone(), &edges)
}

/// On-disk spectrum format: points as label lists, the full open lattice as
/// point-index lists, and the two subbasic families keyed by element label.
#[derive(Debug, Serialize, Deserialize)]
pub struct SpectrumFile {
    pub points: Vec<Vec<String>>,
    pub opens: Vec<Vec<usize>>,
    #[serde(rename = "O_p")]
    pub o_p: BTreeMap<String, Vec<usize>>,
    #[serde(rename = "O_up")]
    pub o_up: BTreeMap<String, Vec<usize>>,
}

impl SpectrumFile {
    pub fn from_spectrum(spec: &SpectrumSpace) -> Self {
        let carrier = spec.rel.carrier();
        SpectrumFile {
            points: spec
                .points
                .iter()
                .map(|t| carrier.subset_labels(t.members()))
                .collect(),
            opens: spec.space.opens().iter().map(|o| o.iter().collect()).collect(),
            o_p: (0..carrier.size())
                .map(|p| (carrier.label(p).to_string(), spec.o_elem[p].iter().collect()))
                .collect(),
            o_up: (0..carrier.size())
                .map(|p| (carrier.label(p).to_string(), spec.o_up[p].iter().collect()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn s(rel: &RelStructure, labels: &[&str]) -> Subset {
        rel.carrier().subset_from_labels(labels.iter().copied()).unwrap()
    }

    #[test]
    fn spectrum_shapes() {
        let e1 = fixtures::e1();
        let spec = build_spectrum(&e1).unwrap();
        assert_eq!(spec.points().len(), 2);
        assert_eq!(spec.space().opens().len(), 4);

        let e3 = fixtures::e3();
        let spec = build_spectrum(&e3).unwrap();
        assert_eq!(spec.points().len(), 2);
        let t = e3.carrier().index_of("t").unwrap();
        let x = e3.carrier().index_of("x").unwrap();
        assert_eq!(spec.o_elem(t).len(), 2);
        assert_eq!(spec.o_elem(x).len(), 1);

        let e2 = fixtures::e2();
        assert_eq!(build_spectrum(&e2).unwrap().points().len(), 1);
    }

    #[test]
    fn basic_open_examples() {
        let e1 = fixtures::e1();
        let spec = build_spectrum(&e1).unwrap();
        let all = basic_open(&spec, e1.carrier().empty(), e1.carrier().empty()).unwrap();
        assert_eq!(all.len(), spec.points().len());

        let oa = basic_open(&spec, s(&e1, &["a"]), e1.carrier().empty()).unwrap();
        assert_eq!(oa.len(), 1);
        assert!(spec.points()[oa.iter().next().unwrap()].members() == s(&e1, &["a"]));

        // O_s ∩ O^s is empty
        let e3 = fixtures::e3();
        let spec = build_spectrum(&e3).unwrap();
        assert!(basic_open(&spec, s(&e3, &["x"]), s(&e3, &["x"])).unwrap().is_empty());
    }

    #[test]
    fn empty_characterization_examples() {
        let e3 = fixtures::e3();
        let spec = build_spectrum(&e3).unwrap();
        assert!(check_empty_characterization(&spec, s(&e3, &["x"]), s(&e3, &["x"])).unwrap());

        let e1 = fixtures::e1();
        let spec = build_spectrum(&e1).unwrap();
        assert!(check_empty_characterization(&spec, s(&e1, &["a"]), s(&e1, &["b"])).unwrap());
        assert!(check_empty_characterization(&spec, e1.carrier().empty(), e1.carrier().empty())
            .unwrap());
    }

    #[test]
    fn representation_suite_passes_on_fixtures() {
        for rel in [fixtures::e1(), fixtures::e2(), fixtures::e3(), fixtures::e4()] {
            let spec = build_spectrum(&rel).unwrap();
            let report = representation_suite(&spec).unwrap();
            assert!(report.passed(), "{}", report.render_text());
        }
    }

    #[test]
    fn concrete_pseudobasis_examples() {
        let e1 = fixtures::e1();
        let spec = build_spectrum(&e1).unwrap();
        assert!(concrete_pseudobasis_of_spectrum(&spec).is_ok());

        let e3 = fixtures::e3();
        let spec = build_spectrum(&e3).unwrap();
        let cpb = concrete_pseudobasis_of_spectrum(&spec).unwrap();
        let t = e3.carrier().index_of("t").unwrap();
        assert_eq!(cpb.members[t].len(), 2);

        // E2 is not separative: distinct elements collapse to the same
        // open over the single point
        let e2 = fixtures::e2();
        let spec = build_spectrum(&e2).unwrap();
        let cpb = concrete_pseudobasis_of_spectrum(&spec).unwrap();
        assert!(cpb.members.iter().all(|m| m.len() == 1));
        let a = e2.carrier().index_of("a").unwrap();
        let b = e2.carrier().index_of("b").unwrap();
        assert_eq!(spec.o_elem(a), spec.o_elem(b));
    }

    #[test]
    fn roundtrip_rel_realises_compact_cover_on_singletons() {
        for rel in [fixtures::e1(), fixtures::e2(), fixtures::e3(), fixtures::e4()] {
            let spec = build_spectrum(&rel).unwrap();
            let back = roundtrip_rel(&spec).unwrap();
            for p in 0..rel.size() {
                for q in 0..rel.size() {
                    let c = rel
                        .compact_cover(rel.carrier().singleton(p), rel.carrier().singleton(q))
                        .unwrap();
                    assert_eq!(back.prec(p, q), c);
                }
            }
        }
        // separative instances recover the original relation on the nose
        for rel in [fixtures::e1(), fixtures::e3()] {
            let spec = build_spectrum(&rel).unwrap();
            assert_eq!(roundtrip_rel(&spec).unwrap().edge_pairs(), rel.edge_pairs());
        }
    }

    #[test]
    fn spectrum_file_round_trips_as_topology() {
        let e3 = fixtures::e3();
        let spec = build_spectrum(&e3).unwrap();
        let file = SpectrumFile::from_spectrum(&spec);
        let text = serde_json::to_string(&file).unwrap();
        let (space, report) = fintop::parse_topology_report(&text, 64).unwrap();
        assert!(report.passed());
        assert_eq!(space.unwrap().opens(), spec.space().opens());
    }
}
