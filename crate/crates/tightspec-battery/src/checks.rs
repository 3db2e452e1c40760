//! The verification battery: one named check per proposition, each
//! evaluated over a corpus instance and returning a witness on failure.
//!
//! Quantifier strategy: pair and triple quantifiers run exhaustively.
//! Quadruple quantifiers (the union/intersection laws and multiplicativity
//! of covers) run exhaustively up to `EXHAUSTIVE_QUAD` elements and on a
//! seeded sample of tuples above that; the sample is reproducible from the
//! instance seed and check name alone.

use serde_json::{json, Value};

use tightspec::carrier::Subset;
use tightspec::fintop;
use tightspec::gpd;
use tightspec::invsemi::{self, OrderedInvSemigroup};
use tightspec::rel::{CoverKind, RelStructure};
use tightspec::spectrum;
use tightspec::tight::{self, Delta, SelectionOutcome, SelectionProblem, StretchOutcome};

use crate::gen::{gen_selection_instance, gen_stretch_instance, Instance};
use crate::oracle;
use crate::rng::XorShift64Star;

const EXHAUSTIVE_QUAD: usize = 4;
const SAMPLED_TUPLES: usize = 512;

pub struct Check {
    pub name: &'static str,
    pub applies: Applies,
    pub run: fn(&Instance, &mut XorShift64Star) -> Result<(), Value>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Applies {
    Rel,
    Semigroup,
    Space,
}

impl Check {
    pub fn applies_to(&self, instance: &Instance) -> bool {
        matches!(
            (self.applies, instance),
            (Applies::Rel, Instance::Rel(_))
                | (Applies::Semigroup, Instance::Semigroup(_))
                | (Applies::Space, Instance::Space { .. })
        )
    }
}

fn rel(i: &Instance) -> &RelStructure {
    match i {
        Instance::Rel(r) => r,
        _ => unreachable!("check applied to wrong instance kind"),
    }
}

fn sg(i: &Instance) -> &OrderedInvSemigroup {
    match i {
        Instance::Semigroup(s) => s,
        _ => unreachable!("check applied to wrong instance kind"),
    }
}

fn masks(n: usize) -> impl Iterator<Item = u128> {
    0u128..(1u128 << n)
}

fn quad_tuples(n: usize, rng: &mut XorShift64Star) -> Vec<(u128, u128, u128, u128)> {
    if n <= EXHAUSTIVE_QUAD {
        let mut out = Vec::new();
        for a in masks(n) {
            for b in masks(n) {
                for c in masks(n) {
                    for d in masks(n) {
                        out.push((a, b, c, d));
                    }
                }
            }
        }
        out
    } else {
        let full = (1u128 << n) - 1;
        (0..SAMPLED_TUPLES)
            .map(|_| {
                (
                    rng.next_u64() as u128 & full,
                    rng.next_u64() as u128 & full,
                    rng.next_u64() as u128 & full,
                    rng.next_u64() as u128 & full,
                )
            })
            .collect()
    }
}

fn triple_tuples(n: usize, rng: &mut XorShift64Star) -> Vec<(u128, u128, u128)> {
    if n <= 5 {
        let mut out = Vec::new();
        for a in masks(n) {
            for b in masks(n) {
                for c in masks(n) {
                    out.push((a, b, c));
                }
            }
        }
        out
    } else {
        let full = (1u128 << n) - 1;
        (0..SAMPLED_TUPLES)
            .map(|_| {
                (
                    rng.next_u64() as u128 & full,
                    rng.next_u64() as u128 & full,
                    rng.next_u64() as u128 & full,
                )
            })
            .collect()
    }
}

fn wit2(r: &RelStructure, a: u128, b: u128) -> Value {
    json!({
        "first": r.carrier().format_subset(r.carrier().subset_from_mask(a)),
        "second": r.carrier().format_subset(r.carrier().subset_from_mask(b)),
    })
}

// ---------------------------------------------------------------- rel laws

fn check_auxiliarity(i: &Instance, rng: &mut XorShift64Star) -> Result<(), Value> {
    let r = rel(i);
    let n = r.size();
    for (qm, q2m, r2m, rm) in quad_tuples(n, rng) {
        // Q ⊆ Q′ and R′ ⊆ R
        let (q, q2) = (qm & q2m, q2m);
        let (r2, rr) = (r2m, r2m | rm);
        let qs = r.carrier().subset_from_mask(q);
        let q2s = r.carrier().subset_from_mask(q2);
        let r2s = r.carrier().subset_from_mask(r2);
        let rs = r.carrier().subset_from_mask(rr);
        if r.dense_cover(q2s, r2s).unwrap() && !r.dense_cover(qs, rs).unwrap() {
            return Err(wit2(r, q, rr));
        }
        if r.compact_cover(q2s, r2s).unwrap() && !r.compact_cover(qs, rs).unwrap() {
            return Err(wit2(r, q, rr));
        }
    }
    Ok(())
}

fn check_dc_transitive(i: &Instance, rng: &mut XorShift64Star) -> Result<(), Value> {
    let r = rel(i);
    for (a, b, c) in triple_tuples(r.size(), rng) {
        let (sa, sb, sc) = (
            r.carrier().subset_from_mask(a),
            r.carrier().subset_from_mask(b),
            r.carrier().subset_from_mask(c),
        );
        if r.dense_cover(sa, sb).unwrap() && r.dense_cover(sb, sc).unwrap() && !r.dense_cover(sa, sc).unwrap() {
            return Err(wit2(r, a, c));
        }
        if r.compact_cover(sa, sb).unwrap() && r.compact_cover(sb, sc).unwrap() && !r.compact_cover(sa, sc).unwrap() {
            return Err(wit2(r, a, c));
        }
    }
    Ok(())
}

/// `Q D S C R ⇒ Q C R ⇒ Q D R ⇔ Q D R^≻`.
fn check_dc_chain(i: &Instance, rng: &mut XorShift64Star) -> Result<(), Value> {
    let r = rel(i);
    for (a, b, c) in triple_tuples(r.size(), rng) {
        let (sa, sb, sc) = (
            r.carrier().subset_from_mask(a),
            r.carrier().subset_from_mask(b),
            r.carrier().subset_from_mask(c),
        );
        if r.dense_cover(sa, sb).unwrap() && r.compact_cover(sb, sc).unwrap() && !r.compact_cover(sa, sc).unwrap() {
            return Err(wit2(r, a, c));
        }
    }
    for a in masks(r.size()) {
        for b in masks(r.size()) {
            let sa = r.carrier().subset_from_mask(a);
            let sb = r.carrier().subset_from_mask(b);
            if r.compact_cover(sa, sb).unwrap() && !r.dense_cover(sa, sb).unwrap() {
                return Err(wit2(r, a, b));
            }
            let down = r.down_image(sb).unwrap();
            if r.dense_cover(sa, sb).unwrap() != r.dense_cover(sa, down).unwrap() {
                return Err(wit2(r, a, b));
            }
        }
    }
    Ok(())
}

fn check_dcap(i: &Instance, rng: &mut XorShift64Star) -> Result<(), Value> {
    let r = rel(i);
    for (a, a2, b, b2) in quad_tuples(r.size(), rng) {
        let (sa, sa2, sb, sb2) = (
            r.carrier().subset_from_mask(a),
            r.carrier().subset_from_mask(a2),
            r.carrier().subset_from_mask(b),
            r.carrier().subset_from_mask(b2),
        );
        if r.dense_cover(sa, sa2).unwrap() && r.dense_cover(sb, sb2).unwrap() {
            let lhs = r.down_image(sa).unwrap().intersect(r.down_image(sb).unwrap());
            let rhs = r.down_image(sa2).unwrap().intersect(r.down_image(sb2).unwrap());
            if !r.dense_cover(lhs, rhs).unwrap() {
                return Err(wit2(r, a, b));
            }
        }
    }
    Ok(())
}

fn check_dcup_ccup(i: &Instance, rng: &mut XorShift64Star) -> Result<(), Value> {
    let r = rel(i);
    for (a, a2, b, b2) in quad_tuples(r.size(), rng) {
        let (sa, sa2, sb, sb2) = (
            r.carrier().subset_from_mask(a),
            r.carrier().subset_from_mask(a2),
            r.carrier().subset_from_mask(b),
            r.carrier().subset_from_mask(b2),
        );
        if r.dense_cover(sa, sa2).unwrap()
            && r.dense_cover(sb, sb2).unwrap()
            && !r.dense_cover(sa.union(sb), sa2.union(sb2)).unwrap()
        {
            return Err(wit2(r, a, b));
        }
        if r.compact_cover(sa, sa2).unwrap()
            && r.compact_cover(sb, sb2).unwrap()
            && !r.compact_cover(sa.union(sb), sa2.union(sb2)).unwrap()
        {
            return Err(wit2(r, a, b));
        }
    }
    Ok(())
}

/// `Q ≺ ∅ ⇔ Q = ∅` always; `Q D ∅ ⇔ Q = ∅` and `Q C ∅ ⇔ Q = ∅` on a round
/// carrier.
fn check_round_min_laws(i: &Instance, _rng: &mut XorShift64Star) -> Result<(), Value> {
    let r = rel(i);
    let empty = r.carrier().empty();
    for qm in masks(r.size()) {
        let q = r.carrier().subset_from_mask(qm);
        if r.subset_prec(q, empty).unwrap() != q.is_empty()
            || r.dense_cover(q, empty).unwrap() != q.is_empty()
            || r.compact_cover(q, empty).unwrap() != q.is_empty()
        {
            return Err(wit2(r, qm, 0));
        }
    }
    Ok(())
}

/// On a round transitive carrier: `Q ⊆ R ⇒ Q D R` and `F ≺ R ⇒ F C R`.
fn check_qsubr_fprecq(i: &Instance, _rng: &mut XorShift64Star) -> Result<(), Value> {
    let r = rel(i);
    for a in masks(r.size()) {
        for b in masks(r.size()) {
            let sa = r.carrier().subset_from_mask(a);
            let sb = r.carrier().subset_from_mask(b);
            if sa.is_subset_of(sb) && !r.dense_cover(sa, sb).unwrap() {
                return Err(wit2(r, a, b));
            }
            if r.subset_prec(sa, sb).unwrap() && !r.compact_cover(sa, sb).unwrap() {
                return Err(wit2(r, a, b));
            }
        }
    }
    Ok(())
}

fn check_perp_auxiliary(i: &Instance, rng: &mut XorShift64Star) -> Result<(), Value> {
    let r = rel(i);
    for (a, b, c) in triple_tuples(r.size(), rng) {
        let (sa, sb, sc) = (
            r.carrier().subset_from_mask(a),
            r.carrier().subset_from_mask(b),
            r.carrier().subset_from_mask(c),
        );
        if r.dense_cover(sa, sb).unwrap()
            && r.disjoint(sb, sc).unwrap()
            && !r.disjoint(sa, sc).unwrap()
        {
            return Err(wit2(r, a, c));
        }
    }
    Ok(())
}

/// `Q D̂ F ∧ Q ¬Ĉ R ⇒ ∃f ∈ F (Q ∪ {f} ¬Ĉ R)`; exhaustive on carriers up to
/// five elements per the stated bound, sampled above.
fn check_centred_dense(i: &Instance, rng: &mut XorShift64Star) -> Result<(), Value> {
    let r = rel(i);
    for (qm, fm, rm) in triple_tuples(r.size(), rng) {
        let q = r.carrier().subset_from_mask(qm);
        let f = r.carrier().subset_from_mask(fm);
        let target = r.carrier().subset_from_mask(rm);
        if r.meet_cover(CoverKind::Dense, q, f) && !r.meet_cover(CoverKind::Compact, q, target) {
            let extendable =
                f.iter().any(|x| !r.meet_cover(CoverKind::Compact, q.with(x), target));
            if !extendable {
                return Err(wit2(r, qm, fm));
            }
        }
    }
    Ok(())
}

/// If `Q D̂ F` with `Q` centred then `Q ∪ {f}` stays centred for some `f`.
fn check_centred_dense_cor(i: &Instance, _rng: &mut XorShift64Star) -> Result<(), Value> {
    let r = rel(i);
    for qm in masks(r.size()) {
        for fm in masks(r.size()) {
            let q = r.carrier().subset_from_mask(qm);
            let f = r.carrier().subset_from_mask(fm);
            if r.is_centred(q) && r.meet_cover(CoverKind::Dense, q, f) {
                let ok = f.iter().any(|x| r.is_centred(q.with(x)));
                if !ok {
                    return Err(wit2(r, qm, fm));
                }
            }
        }
    }
    Ok(())
}

// ------------------------------------------------------- oracle agreement

fn check_reduction_compact(i: &Instance, _rng: &mut XorShift64Star) -> Result<(), Value> {
    let r = rel(i);
    for a in masks(r.size()) {
        for b in masks(r.size()) {
            let sa = r.carrier().subset_from_mask(a);
            let sb = r.carrier().subset_from_mask(b);
            if r.compact_cover(sa, sb).unwrap() != oracle::compact(r, sa, sb) {
                return Err(wit2(r, a, b));
            }
            if r.dense_cover(sa, sb).unwrap() != oracle::dense(r, sa, sb) {
                return Err(wit2(r, a, b));
            }
        }
    }
    Ok(())
}

fn check_reduction_meet_cover(i: &Instance, _rng: &mut XorShift64Star) -> Result<(), Value> {
    let r = rel(i);
    for a in masks(r.size()) {
        for b in masks(r.size()) {
            let sa = r.carrier().subset_from_mask(a);
            let sb = r.carrier().subset_from_mask(b);
            for kind in [CoverKind::Prec, CoverKind::Dense, CoverKind::Compact, CoverKind::Disjoint] {
                if r.meet_cover(kind, sa, sb) != oracle::meet_cover(r, kind, sa, sb) {
                    return Err(wit2(r, a, b));
                }
            }
        }
    }
    Ok(())
}

fn check_reduction_centred_tight(i: &Instance, _rng: &mut XorShift64Star) -> Result<(), Value> {
    let r = rel(i);
    for a in masks(r.size()) {
        let sa = r.carrier().subset_from_mask(a);
        if r.is_centred(sa) != oracle::centred(r, sa) {
            return Err(wit2(r, a, 0));
        }
        if tight::is_tight(r, sa) != oracle::tight(r, sa) {
            return Err(wit2(r, a, 0));
        }
        if tight::is_frink_filter(r, sa) != oracle::frink(r, sa) {
            return Err(wit2(r, a, 0));
        }
    }
    Ok(())
}

/// Round transitive finite relations satisfy the shrinking condition
/// automatically, so the pseudobasis validator cannot fail its third check
/// when the first two pass.
fn check_auto_shrinking(i: &Instance, _rng: &mut XorShift64Star) -> Result<(), Value> {
    let r = rel(i);
    let report = r.validate_pseudobasis();
    let round = report.check("carrier-round").unwrap().pass;
    let trans = report.check("transitive").unwrap().pass;
    let shrink = report.check("shrinking").unwrap().pass;
    if round && trans && !shrink {
        return Err(json!({ "report": "shrinking failed on a round transitive relation" }));
    }
    Ok(())
}

// ---------------------------------------------------------- tight subsets

fn check_tight_implies_frink(i: &Instance, _rng: &mut XorShift64Star) -> Result<(), Value> {
    let r = rel(i);
    for a in masks(r.size()) {
        let sa = r.carrier().subset_from_mask(a);
        if tight::is_tight(r, sa) && !tight::is_frink_filter(r, sa) {
            return Err(wit2(r, a, a));
        }
        if tight::is_tight(r, sa) && r.up_image(sa).unwrap() != sa {
            return Err(wit2(r, a, a));
        }
    }
    Ok(())
}

/// The two characterizations of tightness for `T ≠ P`, with the inner
/// existentials reduced to their optimal witnesses.
fn check_tight_chars(i: &Instance, _rng: &mut XorShift64Star) -> Result<(), Value> {
    let r = rel(i);
    let n = r.size();
    for tm in masks(n) {
        let t = r.carrier().subset_from_mask(tm);
        if t == r.carrier().full() {
            continue;
        }
        // m(T) = T̂ ∩ ((P∖T)^≻)^⊥: the largest meet against the tightest
        // disjointness constraint
        let meet = r.formal_meet(t).unwrap();
        let g = r.down_image(t.complement()).unwrap();
        let m = meet.intersect(r.perp_set(g).unwrap());
        let cond_tight = (0..n).all(|x| {
            r.compact_cover(m, r.carrier().singleton(x)).unwrap() == t.contains(x)
        });
        let cond_tight_prime = masks(n).all(|hm| {
            let h = r.carrier().subset_from_mask(hm);
            r.compact_cover(m, h).unwrap() == h.intersects(t)
        });
        let is_tight = tight::is_tight(r, t);
        if is_tight != cond_tight || cond_tight != cond_tight_prime {
            return Err(wit2(r, tm, 0));
        }
    }
    Ok(())
}

/// Tightness in its disjointness form: `T` is tight iff it is round and
/// every finite `F ⊆ T` and `G ≺ P∖T` leave `F̂ ∩ G^⊥` non-empty. The
/// quantifiers are evaluated literally here, giving a route independent of
/// the meet-cover reduction.
fn check_tight_round_form(i: &Instance, _rng: &mut XorShift64Star) -> Result<(), Value> {
    let r = rel(i);
    let n = r.size();
    for tm in masks(n) {
        let t = r.carrier().subset_from_mask(tm);
        let mut witnessed = r.is_round(t);
        'scan: for f in t.subsets() {
            if !witnessed {
                break;
            }
            let meet = r.formal_meet(f).unwrap();
            for gm in masks(n) {
                let g = r.carrier().subset_from_mask(gm);
                if r.subset_prec(g, t.complement()).unwrap()
                    && !meet.intersects(r.perp_set(g).unwrap())
                {
                    witnessed = false;
                    break 'scan;
                }
            }
        }
        if tight::is_tight(r, t) != witnessed {
            return Err(wit2(r, tm, 0));
        }
    }
    Ok(())
}

/// Full carrier tight iff centred; empty set tight iff `P ¬C P`.
fn check_s0_tight(i: &Instance, _rng: &mut XorShift64Star) -> Result<(), Value> {
    let r = rel(i);
    let full = r.carrier().full();
    let empty = r.carrier().empty();
    if tight::is_tight(r, full) != r.is_centred(full) {
        return Err(json!({ "case": "full" }));
    }
    if tight::is_tight(r, empty) != !r.compact_cover(full, full).unwrap() {
        return Err(json!({ "case": "empty" }));
    }
    // when the full carrier is tight it is the only tight subset
    if tight::is_tight(r, full) {
        for a in masks(r.size()) {
            let sa = r.carrier().subset_from_mask(a);
            if sa != full && tight::is_tight(r, sa) {
                return Err(wit2(r, a, 0));
            }
        }
    }
    Ok(())
}

/// Maximality among round centred subsets is exactly the meet-disjointness
/// criterion; members are tight, satisfy the all-finite-sets variant, and
/// tightness of round centred sets matches the dense-cover criterion.
fn check_max_round_centred(i: &Instance, _rng: &mut XorShift64Star) -> Result<(), Value> {
    let r = rel(i);
    let n = r.size();
    let maximal = tight::maximal_round_centred(r).unwrap();
    let candidates: Vec<Subset> = masks(n)
        .map(|m| r.carrier().subset_from_mask(m))
        .filter(|u| r.is_round(*u) && r.is_centred(*u))
        .collect();
    for u in &candidates {
        let is_maximal = maximal.contains(u);
        let ultra_exists = (0..n).all(|a| {
            let sa = r.carrier().singleton(a);
            !r.subset_prec(sa, u.complement()).unwrap()
                || r.meet_cover(CoverKind::Disjoint, *u, sa)
        });
        if is_maximal != ultra_exists {
            return Err(wit2(r, u.mask(), 0));
        }
        let tight_forall = masks(n).all(|gm| {
            let g = r.carrier().subset_from_mask(gm);
            !r.subset_prec(g, u.complement()).unwrap() || !r.meet_cover(CoverKind::Dense, *u, g)
        });
        if tight::is_tight(r, *u) != tight_forall {
            return Err(wit2(r, u.mask(), 1));
        }
        if is_maximal {
            let ultra_forall = masks(n).all(|gm| {
                let g = r.carrier().subset_from_mask(gm);
                !r.subset_prec(g, u.complement()).unwrap()
                    || r.meet_cover(CoverKind::Disjoint, *u, g)
            });
            if !ultra_forall || !tight::is_tight(r, *u) {
                return Err(wit2(r, u.mask(), 2));
            }
        }
    }
    Ok(())
}

fn check_enumerate_tight_brute(i: &Instance, _rng: &mut XorShift64Star) -> Result<(), Value> {
    let r = rel(i);
    let brute: Vec<u128> = (1u128..(1 << r.size()))
        .filter(|&m| oracle::tight(r, r.carrier().subset_from_mask(m)))
        .collect();
    let got: Vec<u128> =
        tight::enumerate_tight(r).unwrap().sets.iter().map(|t| t.members().mask()).collect();
    if got != brute {
        return Err(json!({ "expected": format!("{brute:?}"), "got": format!("{got:?}") }));
    }
    Ok(())
}

// --------------------------------------------------------------- spectrum

fn check_spectrum_suite(i: &Instance, _rng: &mut XorShift64Star) -> Result<(), Value> {
    let r = rel(i);
    let spec = spectrum::build_spectrum(r).map_err(|e| json!({ "build": e.to_string() }))?;
    let report = spectrum::representation_suite(&spec).map_err(|e| json!(e.to_string()))?;
    if !report.passed() {
        let first = report.failures().next().unwrap();
        return Err(json!({ "check": first.name, "witness": first.witness }));
    }
    spectrum::concrete_pseudobasis_of_spectrum(&spec)
        .map_err(|e| json!({ "concrete-pseudobasis": e.to_string() }))?;
    Ok(())
}

/// The recovered relation on `(O_p)` realises the compact cover on
/// singletons; for separative instances it is the original relation.
fn check_spectrum_roundtrip(i: &Instance, _rng: &mut XorShift64Star) -> Result<(), Value> {
    let r = rel(i);
    let spec = spectrum::build_spectrum(r).map_err(|e| json!({ "build": e.to_string() }))?;
    let back = spectrum::roundtrip_rel(&spec).map_err(|e| json!(e.to_string()))?;
    for p in 0..r.size() {
        for q in 0..r.size() {
            let c = r
                .compact_cover(r.carrier().singleton(p), r.carrier().singleton(q))
                .unwrap();
            if back.prec(p, q) != c {
                return Err(wit2(r, 1 << p, 1 << q));
            }
        }
    }
    if !back.validate_pseudobasis().passed() {
        return Err(json!({ "recovered": "not a pseudobasis" }));
    }
    if r.is_separative().map_err(|e| json!(e.to_string()))?.passed()
        && back.edge_pairs() != r.edge_pairs()
    {
        return Err(json!({ "separative": "roundtrip changed the relation" }));
    }
    Ok(())
}

// ------------------------------------------------------ theorem checkers

fn check_selection_totality(i: &Instance, rng: &mut XorShift64Star) -> Result<(), Value> {
    let _ = rel(i);
    let seed = rng.next_u64();
    let inst = gen_selection_instance(seed, 5);
    let problem = SelectionProblem {
        rel: &inst.rel,
        delta: Delta::List(inst.delta.clone()),
        gamma: inst.gamma.clone(),
        theta: Some(inst.theta.clone()),
    };
    let hyp = problem.hypothesis_report().map_err(|e| json!(e.to_string()))?;
    if !hyp.passed() {
        return Err(json!({ "seed": seed, "hypotheses": "generator produced an invalid problem" }));
    }
    match tight::selection_solve(&problem).map_err(|e| json!(e.to_string()))? {
        SelectionOutcome::Solution(r) => {
            let fip = r.subsets().all(|d| inst.delta.contains(&d));
            let selector = inst.gamma.iter().all(|f| f.intersects(r));
            if !(inst.rel.is_round(r) && fip && selector) {
                return Err(json!({ "seed": seed, "solution": "postconditions failed" }));
            }
            Ok(())
        }
        SelectionOutcome::NoSolution(_) => {
            Err(json!({ "seed": seed, "outcome": "NoSolution under valid hypotheses" }))
        }
    }
}

fn check_stretch_totality(i: &Instance, rng: &mut XorShift64Star) -> Result<(), Value> {
    let _ = rel(i);
    let seed = rng.next_u64();
    let inst = gen_stretch_instance(seed, 5);
    match tight::tight_stretch(&inst.rel, inst.q, inst.r, inst.s)
        .map_err(|e| json!(e.to_string()))?
    {
        StretchOutcome::Tight(t) => {
            let m = t.members();
            let ok = inst.r.is_subset_of(m)
                && !m.intersects(inst.s)
                && !inst.rel.meet_cover(CoverKind::Compact, inst.q.union(m), m.complement());
            if !ok {
                return Err(json!({ "seed": seed, "solution": "postconditions failed" }));
            }
            Ok(())
        }
        StretchOutcome::NoSolution => {
            Err(json!({ "seed": seed, "outcome": "NoSolution under valid preconditions" }))
        }
    }
}

// -------------------------------------------------------------- semigroups

fn check_canonical_order_forms(i: &Instance, _rng: &mut XorShift64Star) -> Result<(), Value> {
    let s = sg(i);
    if !s.base().canonical_order_forms_agree() {
        return Err(json!({ "canonical-order": "formulations disagree" }));
    }
    Ok(())
}

/// `T⁻¹U ⊆ (CC⁻¹)^≤ ⇔ T⁻¹UC ⊆ C ⇒ (TC)^≤ = (UC)^≤` for non-empty `T`, `U`
/// and cosets `C`; quantified over everything on semigroups up to 7
/// elements, sampled above.
fn check_t1u_law(i: &Instance, rng: &mut XorShift64Star) -> Result<(), Value> {
    let s = sg(i).base();
    let n = s.size();
    let cosets: Vec<Subset> = masks(n)
        .map(|m| s.elements().subset_from_mask(m))
        .filter(|c| !c.is_empty() && invsemi::is_coset(s, *c))
        .collect();
    let tuples: Vec<(u128, u128)> = if n <= 7 {
        masks(n).flat_map(|a| masks(n).map(move |b| (a, b))).collect()
    } else {
        let full = (1u128 << n) - 1;
        (0..SAMPLED_TUPLES)
            .map(|_| (rng.next_u64() as u128 & full, rng.next_u64() as u128 & full))
            .collect()
    };
    for c in &cosets {
        let cc = s.up_leq(s.set_mul(*c, s.set_inv(*c)));
        for &(tm, um) in &tuples {
            if tm == 0 || um == 0 {
                continue;
            }
            let t = s.elements().subset_from_mask(tm);
            let u = s.elements().subset_from_mask(um);
            let lhs = s.set_mul(s.set_inv(t), u).is_subset_of(cc);
            let mid = s.set_mul(s.set_mul(s.set_inv(t), u), *c).is_subset_of(*c);
            if lhs != mid {
                return Err(json!({ "t": tm.to_string(), "u": um.to_string(), "c": c.mask().to_string() }));
            }
            if lhs {
                let tc = s.up_leq(s.set_mul(t, *c));
                let uc = s.up_leq(s.set_mul(u, *c));
                if tc != uc {
                    return Err(json!({ "t": tm.to_string(), "u": um.to_string(), "c": c.mask().to_string() }));
                }
            }
        }
    }
    Ok(())
}

/// Frink filters of the ordered inverse semigroup `(S, ≺)` are cosets.
fn check_frink_coset(i: &Instance, _rng: &mut XorShift64Star) -> Result<(), Value> {
    let s = sg(i);
    for m in masks(s.base().size()) {
        let u = s.base().elements().subset_from_mask(m);
        if tight::is_frink_filter(s.prec(), u) && !invsemi::is_coset(s.base(), u) {
            return Err(json!({ "filter_mask": m.to_string() }));
        }
    }
    Ok(())
}

/// `⊥` and `D` have equivalent `≤`-formulations ignoring zero, and both
/// are stable under right multiplication.
fn check_perp_dense_zero_forms(i: &Instance, _rng: &mut XorShift64Star) -> Result<(), Value> {
    let s = sg(i);
    let base = s.base();
    let p = s.p_structure().map_err(|e| json!(e.to_string()))?;
    let n = base.size();
    let zero = base.zero().unwrap();
    let pn = p.rel.size();
    for am in masks(pn) {
        for bm in masks(pn) {
            let a = p.rel.carrier().subset_from_mask(am);
            let b = p.rel.carrier().subset_from_mask(bm);
            let sa = p.embed(a, n);
            let sb = p.embed(b, n);

            // Q^≥ ∩ R^≥ = {0} ⇔ Q ⊥ R
            let mut down_a = base.elements().empty();
            let mut down_b = base.elements().empty();
            for x in 0..n {
                if sa.iter().any(|q| base.leq(x, q)) {
                    down_a.insert(x);
                }
                if sb.iter().any(|q| base.leq(x, q)) {
                    down_b.insert(x);
                }
            }
            let inter = down_a.intersect(down_b);
            let leq_form = inter.is_subset_of(base.elements().singleton(zero));
            let perp = p.rel.disjoint(a, b).unwrap();
            if leq_form != perp {
                return Err(json!({ "q": am.to_string(), "r": bm.to_string(), "law": "perp" }));
            }

            // Q^≥∖{0} ≥ R^≥∖{0} ⇔ Q D R
            let da = down_a.minus(base.elements().singleton(zero));
            let db = down_b.minus(base.elements().singleton(zero));
            let leq_dense = da.iter().all(|x| db.iter().any(|y| base.leq(y, x)));
            let dense = p.rel.dense_cover(a, b).unwrap();
            if leq_dense != dense {
                return Err(json!({ "q": am.to_string(), "r": bm.to_string(), "law": "dense" }));
            }

            // right multiplication preserves both
            for elem in 0..n {
                let sa_s = p.restrict(base.set_mul(sa, base.elements().singleton(elem)));
                let sb_s = p.restrict(base.set_mul(sb, base.elements().singleton(elem)));
                if perp && !p.rel.disjoint(sa_s, sb_s).unwrap() {
                    return Err(json!({ "q": am.to_string(), "r": bm.to_string(), "s": elem, "law": "perp-mul" }));
                }
                if dense && !p.rel.dense_cover(sa_s, sb_s).unwrap() {
                    return Err(json!({ "q": am.to_string(), "r": bm.to_string(), "s": elem, "law": "dense-mul" }));
                }
            }
        }
    }
    Ok(())
}

/// `D` and `C` are multiplicative on subsets.
fn check_cover_multiplicative(i: &Instance, rng: &mut XorShift64Star) -> Result<(), Value> {
    let s = sg(i);
    let base = s.base();
    let p = s.p_structure().map_err(|e| json!(e.to_string()))?;
    let n = base.size();
    let pn = p.rel.size();
    for (am, a2m, bm, b2m) in quad_tuples(pn, rng) {
        let a = p.rel.carrier().subset_from_mask(am);
        let a2 = p.rel.carrier().subset_from_mask(a2m);
        let b = p.rel.carrier().subset_from_mask(bm);
        let b2 = p.rel.carrier().subset_from_mask(b2m);
        let ab = p.restrict(base.set_mul(p.embed(a, n), p.embed(b, n)));
        let a2b2 = p.restrict(base.set_mul(p.embed(a2, n), p.embed(b2, n)));
        if p.rel.dense_cover(a, a2).unwrap()
            && p.rel.dense_cover(b, b2).unwrap()
            && !p.rel.dense_cover(ab, a2b2).unwrap()
        {
            return Err(json!({ "law": "dense", "q": am.to_string(), "r": bm.to_string() }));
        }
        if p.rel.compact_cover(a, a2).unwrap()
            && p.rel.compact_cover(b, b2).unwrap()
            && !p.rel.compact_cover(ab, a2b2).unwrap()
        {
            return Err(json!({ "law": "compact", "q": am.to_string(), "r": bm.to_string() }));
        }
    }
    Ok(())
}

/// `s ≺ S` and `ss⁻¹ ∈ (T⁻¹T)^≤` send tight `T` to tight `(Ts)^≤`.
fn check_ts_tight(i: &Instance, _rng: &mut XorShift64Star) -> Result<(), Value> {
    let s = sg(i);
    let base = s.base();
    let p = s.p_structure().map_err(|e| json!(e.to_string()))?;
    let n = base.size();
    let tights = tight::enumerate_tight(&p.rel).map_err(|e| json!(e.to_string()))?;
    for t in &tights.sets {
        let st = p.embed(t.members(), n);
        let unit_set = base.up_leq(base.set_mul(base.set_inv(st), st));
        for elem in 0..n {
            if !s.prec_something(elem) {
                continue;
            }
            if !unit_set.contains(base.mul(elem, base.inv(elem))) {
                continue;
            }
            let ts = base.up_leq(base.set_mul(st, base.elements().singleton(elem)));
            let restricted = p.restrict(ts);
            if ts.contains(base.zero().unwrap()) || !tight::is_tight(&p.rel, restricted) {
                return Err(json!({
                    "tight": base.elements().format_subset(st),
                    "s": base.elements().label(elem)
                }));
            }
        }
    }
    Ok(())
}

/// The tight groupoid construction: validity of the groupoid, the étale
/// family and the `(O_s)` laws it verifies internally.
fn check_tight_groupoid(i: &Instance, _rng: &mut XorShift64Star) -> Result<(), Value> {
    let s = sg(i);
    let tg = gpd::tight_groupoid(s).map_err(|e| json!(e.to_string()))?;
    let report = gpd::etale_family_report(&tg.groupoid, &tg.family.members);
    if !report.passed() {
        let first = report.failures().next().unwrap();
        return Err(json!({ "etale": first.name, "witness": first.witness }));
    }
    Ok(())
}

/// `T_{g⁻¹} = T_g⁻¹` and `T_{gh} = (T_g T_h)^≤` over the étale family of
/// the tight groupoid, with `≤ = ⊆` on family members.
fn check_functor_law(i: &Instance, _rng: &mut XorShift64Star) -> Result<(), Value> {
    let s = sg(i);
    let tg = gpd::tight_groupoid(s).map_err(|e| json!(e.to_string()))?;
    let g = &tg.groupoid;
    let members = &tg.family.members;
    let k = members.len();
    let t_of = |x: usize| -> Subset {
        (0..k).fold(Subset::empty(k), |acc, i| if members[i].contains(x) { acc.with(i) } else { acc })
    };
    let inv_family = |f: Subset| -> Subset {
        let mut out = Subset::empty(k);
        for i in f.iter() {
            let inv_member = g.set_inv(members[i]);
            if let Some(j) = members.iter().position(|m| *m == inv_member) {
                out.insert(j);
            }
        }
        out
    };
    for x in 0..g.size() {
        if t_of(g.inv(x)) != inv_family(t_of(x)) {
            return Err(json!({ "law": "inverse", "g": g.elements().label(x) }));
        }
        for y in 0..g.size() {
            let Some(xy) = g.prod(x, y) else { continue };
            // (T_x T_y)^≤ within the family, ≤ = ⊆
            let mut products = Subset::empty(k);
            for ix in t_of(x).iter() {
                for iy in t_of(y).iter() {
                    let p = g.set_mul(members[ix], members[iy]);
                    if let Some(j) = members.iter().position(|m| *m == p) {
                        products.insert(j);
                    }
                }
            }
            let mut up = Subset::empty(k);
            for j in 0..k {
                if products.iter().any(|i| members[i].is_subset_of(members[j])) {
                    up.insert(j);
                }
            }
            if t_of(xy) != up {
                return Err(json!({
                    "law": "product",
                    "g": g.elements().label(x),
                    "h": g.elements().label(y)
                }));
            }
        }
    }
    Ok(())
}

/// `(⋂A)(⋂B) = ⋂{ab}` for small non-empty families of bisections.
fn check_intersection_preserving(i: &Instance, rng: &mut XorShift64Star) -> Result<(), Value> {
    let s = sg(i);
    let tg = gpd::tight_groupoid(s).map_err(|e| json!(e.to_string()))?;
    let g = &tg.groupoid;
    if g.size() > 12 {
        return Ok(());
    }
    let bisections = g.nonempty_bisections().map_err(|e| json!(e.to_string()))?;
    if bisections.is_empty() {
        return Ok(());
    }
    let pick = |rng: &mut XorShift64Star| -> Vec<Subset> {
        let len = 1 + rng.below(2) as usize;
        (0..len).map(|_| bisections[rng.below(bisections.len() as u64) as usize]).collect()
    };
    for _ in 0..64 {
        let fam_a = pick(rng);
        let fam_b = pick(rng);
        let inter_a = fam_a.iter().fold(g.elements().full(), |acc, x| acc.intersect(*x));
        let inter_b = fam_b.iter().fold(g.elements().full(), |acc, x| acc.intersect(*x));
        let lhs = g.set_mul(inter_a, inter_b);
        let mut rhs = g.elements().full();
        for a in &fam_a {
            for b in &fam_b {
                rhs = rhs.intersect(g.set_mul(*a, *b));
            }
        }
        if lhs != rhs {
            return Err(json!({
                "a": fam_a.iter().map(|x| g.elements().format_subset(*x)).collect::<Vec<_>>(),
                "b": fam_b.iter().map(|x| g.elements().format_subset(*x)).collect::<Vec<_>>(),
            }));
        }
    }
    Ok(())
}

/// The patch of the coarsening generated by the étale family is the
/// discrete topology again, and its open bisections form an étale family.
fn check_patch_etale(i: &Instance, _rng: &mut XorShift64Star) -> Result<(), Value> {
    let s = sg(i);
    let tg = gpd::tight_groupoid(s).map_err(|e| json!(e.to_string()))?;
    let g = &tg.groupoid;
    if g.size() > 12 {
        return Ok(());
    }
    let discrete = fintop::FiniteSpace::discrete(g.elements().clone())
        .map_err(|e| json!(e.to_string()))?;
    let coarse = fintop::FiniteSpace::generate(g.elements().clone(), &tg.family.members)
        .map_err(|e| json!(e.to_string()))?;
    let patched = fintop::patch(&coarse);
    if patched != discrete {
        return Err(json!({ "patch": "did not recover the discrete topology" }));
    }
    let mut bisections: Vec<Subset> = g.nonempty_bisections().map_err(|e| json!(e.to_string()))?;
    bisections.push(g.elements().empty());
    let report = gpd::etale_family_report(g, &bisections);
    if !report.passed() {
        return Err(json!({ "open-bisections": "not an étale family" }));
    }
    Ok(())
}

/// Groupoid recovery from all non-empty bisections, which always form an
/// étale pseudobasis of the discrete groupoid space.
fn check_groupoid_recovery(i: &Instance, _rng: &mut XorShift64Star) -> Result<(), Value> {
    let s = sg(i);
    let tg = gpd::tight_groupoid(s).map_err(|e| json!(e.to_string()))?;
    let g = &tg.groupoid;
    if g.size() > 8 {
        return Ok(());
    }
    let bisections = g.nonempty_bisections().map_err(|e| json!(e.to_string()))?;
    let report = gpd::recover_groupoid(g, &bisections).map_err(|e| json!(e.to_string()))?;
    if !report.passed() {
        let first = report.failures().next().unwrap();
        return Err(json!({ "check": first.name }));
    }
    Ok(())
}

/// A right-auxiliary `≺` on a round `P` makes zero a `≺`-minimum; checked
/// conditionally, instances without right-auxiliarity pass vacuously.
fn check_right_aux_zero_min(i: &Instance, _rng: &mut XorShift64Star) -> Result<(), Value> {
    let s = sg(i);
    let base = s.base();
    let n = base.size();
    let zero = base.zero().unwrap();
    let right_aux = (0..n).all(|q| {
        (0..n).all(|r2| {
            (0..n).all(|r| {
                !(base.leq(q, r2) && s.prec().prec(r2, r)) || s.prec().prec(q, r)
            })
        })
    });
    if !right_aux {
        return Ok(());
    }
    for p in 0..n {
        if p != zero && !s.prec().prec(zero, p) {
            return Err(json!({ "element": base.elements().label(p) }));
        }
    }
    // with a pair of non-zero elements multiplying to zero, 0 ≺ 0 as well
    let annihilating = (0..n).any(|p| {
        p != zero && (0..n).any(|q| q != zero && base.mul(p, q) == zero)
    });
    if annihilating && !s.prec().prec(zero, zero) {
        return Err(json!({ "element": "0" }));
    }
    Ok(())
}

// ------------------------------------------------------------------ spaces

fn space_parts(i: &Instance) -> (&fintop::FiniteSpace, &[Subset]) {
    match i {
        Instance::Space { space, members } => (space, members),
        _ => unreachable!(),
    }
}

/// Opens are exactly the up-sets of the specialization preorder, and
/// saturation agrees with the literal intersection of covering opens.
fn check_alexandroff(i: &Instance, _rng: &mut XorShift64Star) -> Result<(), Value> {
    let (space, _) = space_parts(i);
    let specialization = fintop::specialization_order(space);
    for m in masks(space.size()) {
        let a = space.points().subset_from_mask(m);
        if space.is_open(a) != specialization.is_up_closed(a) {
            return Err(json!({ "mask": m.to_string() }));
        }
        let literal = space
            .opens()
            .iter()
            .filter(|o| a.is_subset_of(**o))
            .fold(space.full(), |acc, o| acc.intersect(*o));
        if fintop::saturation(space, a) != literal {
            return Err(json!({ "mask": m.to_string(), "law": "saturation" }));
        }
    }
    Ok(())
}

fn check_way_below_degenerate(i: &Instance, _rng: &mut XorShift64Star) -> Result<(), Value> {
    let (space, _) = space_parts(i);
    for o in space.opens() {
        for n in space.opens() {
            if fintop::way_below(space, *o, *n).unwrap() != o.is_subset_of(*n) {
                return Err(json!({
                    "o": space.points().format_subset(*o),
                    "n": space.points().format_subset(*n)
                }));
            }
        }
    }
    Ok(())
}

/// The generated coarsening is stably locally compact and T0 and patches
/// back to the original space, for every pseudosubbasis sample.
fn check_pseudo_patch(i: &Instance, rng: &mut XorShift64Star) -> Result<(), Value> {
    let (space, members) = space_parts(i);
    // the given pseudobasis, plus a few random separating subfamilies
    let mut families: Vec<Vec<Subset>> = vec![members.to_vec()];
    for _ in 0..8 {
        let fam: Vec<Subset> = members
            .iter()
            .copied()
            .filter(|_| rng.chance(2, 3))
            .collect();
        families.push(fam);
    }
    for fam in families {
        if !fintop::is_pseudosubbasis(space, &fam).map_err(|e| json!(e.to_string()))?.passed() {
            continue;
        }
        let coarse = fintop::coarsen(space, &fam).map_err(|e| json!(e.to_string()))?;
        let cls = fintop::classify(&coarse);
        if !cls.check("t0").unwrap().pass || !cls.check("stably-locally-compact").unwrap().pass {
            return Err(json!({ "classification": "coarsening not stably locally compact T0" }));
        }
        if !fintop::patch_recovers(space, &fam).map_err(|e| json!(e.to_string()))? {
            return Err(json!({ "patch": "did not recover the space" }));
        }
    }
    Ok(())
}

fn check_topology_recovery(i: &Instance, _rng: &mut XorShift64Star) -> Result<(), Value> {
    let (space, members) = space_parts(i);
    let report = fintop::recovery_report(space, members).map_err(|e| json!(e.to_string()))?;
    if !report.passed() {
        let first = report.failures().next().unwrap();
        return Err(json!({ "check": first.name }));
    }
    Ok(())
}

fn check_pseudobasis_reformulations(i: &Instance, rng: &mut XorShift64Star) -> Result<(), Value> {
    let (space, members) = space_parts(i);
    let mut families: Vec<Vec<Subset>> = vec![members.to_vec(), vec![]];
    for _ in 0..6 {
        families.push(members.iter().copied().filter(|_| rng.chance(1, 2)).collect());
    }
    for fam in families {
        if !fintop::pseudobasis_reformulation_agrees(space, &fam).map_err(|e| json!(e.to_string()))? {
            return Err(json!({ "family_size": fam.len() }));
        }
    }
    Ok(())
}

fn check_classify_literal(i: &Instance, _rng: &mut XorShift64Star) -> Result<(), Value> {
    let (space, _) = space_parts(i);
    if space.opens().len() > 256 {
        return Ok(());
    }
    let fast = fintop::classify(space);
    let literal = fintop::classify_literal(space).map_err(|e| json!(e.to_string()))?;
    for check in &literal.checks {
        if fast.check(&check.name).map(|c| c.pass) != Some(check.pass) {
            return Err(json!({ "check": check.name }));
        }
    }
    Ok(())
}

/// Every check in the battery, in a stable order.
pub fn all_checks() -> Vec<Check> {
    vec![
        Check { name: "auxiliarity", applies: Applies::Rel, run: check_auxiliarity },
        Check { name: "dc-transitive", applies: Applies::Rel, run: check_dc_transitive },
        Check { name: "dc-chain", applies: Applies::Rel, run: check_dc_chain },
        Check { name: "dcap", applies: Applies::Rel, run: check_dcap },
        Check { name: "dcup-ccup", applies: Applies::Rel, run: check_dcup_ccup },
        Check { name: "round-min-laws", applies: Applies::Rel, run: check_round_min_laws },
        Check { name: "qsubr-fprecq", applies: Applies::Rel, run: check_qsubr_fprecq },
        Check { name: "perp-auxiliary", applies: Applies::Rel, run: check_perp_auxiliary },
        Check { name: "centred-dense", applies: Applies::Rel, run: check_centred_dense },
        Check { name: "centred-dense-cor", applies: Applies::Rel, run: check_centred_dense_cor },
        Check { name: "reduction-compact-cover", applies: Applies::Rel, run: check_reduction_compact },
        Check { name: "reduction-meet-cover", applies: Applies::Rel, run: check_reduction_meet_cover },
        Check { name: "reduction-centred-tight", applies: Applies::Rel, run: check_reduction_centred_tight },
        Check { name: "auto-shrinking", applies: Applies::Rel, run: check_auto_shrinking },
        Check { name: "tight-implies-frink", applies: Applies::Rel, run: check_tight_implies_frink },
        Check { name: "tight-chars", applies: Applies::Rel, run: check_tight_chars },
        Check { name: "tight-round-form", applies: Applies::Rel, run: check_tight_round_form },
        Check { name: "s0-tight", applies: Applies::Rel, run: check_s0_tight },
        Check { name: "max-round-centred", applies: Applies::Rel, run: check_max_round_centred },
        Check { name: "enumerate-tight-brute", applies: Applies::Rel, run: check_enumerate_tight_brute },
        Check { name: "spectrum-suite", applies: Applies::Rel, run: check_spectrum_suite },
        Check { name: "spectrum-roundtrip", applies: Applies::Rel, run: check_spectrum_roundtrip },
        Check { name: "selection-totality", applies: Applies::Rel, run: check_selection_totality },
        Check { name: "stretch-totality", applies: Applies::Rel, run: check_stretch_totality },
        Check { name: "canonical-order-forms", applies: Applies::Semigroup, run: check_canonical_order_forms },
        Check { name: "t1u-law", applies: Applies::Semigroup, run: check_t1u_law },
        Check { name: "frink-coset", applies: Applies::Semigroup, run: check_frink_coset },
        Check { name: "perp-dense-zero-forms", applies: Applies::Semigroup, run: check_perp_dense_zero_forms },
        Check { name: "cover-multiplicative", applies: Applies::Semigroup, run: check_cover_multiplicative },
        Check { name: "ts-tight", applies: Applies::Semigroup, run: check_ts_tight },
        Check { name: "tight-groupoid", applies: Applies::Semigroup, run: check_tight_groupoid },
        Check { name: "functor-law", applies: Applies::Semigroup, run: check_functor_law },
        Check { name: "intersection-preserving", applies: Applies::Semigroup, run: check_intersection_preserving },
        Check { name: "patch-etale", applies: Applies::Semigroup, run: check_patch_etale },
        Check { name: "groupoid-recovery", applies: Applies::Semigroup, run: check_groupoid_recovery },
        Check { name: "right-aux-zero-min", applies: Applies::Semigroup, run: check_right_aux_zero_min },
        Check { name: "alexandroff", applies: Applies::Space, run: check_alexandroff },
        Check { name: "way-below-degenerate", applies: Applies::Space, run: check_way_below_degenerate },
        Check { name: "pseudo-patch", applies: Applies::Space, run: check_pseudo_patch },
        Check { name: "topology-recovery", applies: Applies::Space, run: check_topology_recovery },
        Check { name: "pseudobasis-reformulations", applies: Applies::Space, run: check_pseudobasis_reformulations },
        Check { name: "classify-literal", applies: Applies::Space, run: check_classify_literal },
    ]
}
