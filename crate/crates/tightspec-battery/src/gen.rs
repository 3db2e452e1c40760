//! Deterministic instance generation. The same `InstanceGenSpec` always
//! yields the same instance: every random draw comes from the xorshift64*
//! stream seeded by that spec's seed field.

use serde::{Deserialize, Serialize};

use tightspec::carrier::{Carrier, Subset};
use tightspec::error::{Error, Result};
use tightspec::fintop::FiniteSpace;
use tightspec::invsemi::{
    self, all_partial_bijections, partial_bijection_semigroup, OrderedInvSemigroup,
};
use tightspec::rel::{RelStructure, RelationFile};
use tightspec::tight;

use crate::rng::XorShift64Star;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InstanceKind {
    Poset,
    RoundTransitive,
    MeetSemilattice,
    InverseSemigroup,
    DiscretePseudobasis,
}

impl InstanceKind {
    pub const ALL: [InstanceKind; 5] = [
        InstanceKind::Poset,
        InstanceKind::RoundTransitive,
        InstanceKind::MeetSemilattice,
        InstanceKind::InverseSemigroup,
        InstanceKind::DiscretePseudobasis,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            InstanceKind::Poset => "poset",
            InstanceKind::RoundTransitive => "round-transitive",
            InstanceKind::MeetSemilattice => "meet-semilattice",
            InstanceKind::InverseSemigroup => "inverse-semigroup",
            InstanceKind::DiscretePseudobasis => "discrete-pseudobasis",
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct InstanceGenSpec {
    pub seed: u64,
    pub max_size: usize,
    pub kind: InstanceKind,
}

/// A generated instance; relation-flavoured kinds carry a validated
/// pseudobasis, semigroup kinds an ordered inverse semigroup, spaces a
/// discrete space with a pseudobasis of opens.
#[derive(Clone, Debug)]
pub enum Instance {
    Rel(RelStructure),
    Semigroup(OrderedInvSemigroup),
    Space { space: FiniteSpace, members: Vec<Subset> },
}

impl Instance {
    /// Dump in the matching module JSON format, for replay.
    pub fn dump(&self) -> serde_json::Value {
        match self {
            Instance::Rel(rel) => serde_json::to_value(RelationFile::from_rel(rel)).unwrap(),
            Instance::Semigroup(s) => {
                serde_json::to_value(invsemi::SemigroupFile::from_ordered(s)).unwrap()
            }
            Instance::Space { space, members } => serde_json::json!({
                "points": space.points().labels(),
                "opens": space.opens().iter().map(|o| o.iter().collect::<Vec<_>>()).collect::<Vec<_>>(),
                "pseudobasis": members.iter().map(|m| m.iter().collect::<Vec<_>>()).collect::<Vec<_>>(),
            }),
        }
    }
}

pub fn gen_instance(spec: &InstanceGenSpec) -> Result<Instance> {
    if spec.max_size == 0 || spec.max_size > 16 {
        return Err(Error::TooLarge("battery instances are capped at 16 elements".into()));
    }
    let mut rng = XorShift64Star::new(spec.seed);
    Ok(match spec.kind {
        InstanceKind::Poset => Instance::Rel(gen_poset(&mut rng, spec.max_size)),
        InstanceKind::RoundTransitive => {
            Instance::Rel(gen_round_transitive(&mut rng, spec.max_size))
        }
        InstanceKind::MeetSemilattice => {
            Instance::Semigroup(gen_meet_semilattice(&mut rng, spec.max_size)?)
        }
        InstanceKind::InverseSemigroup => {
            Instance::Semigroup(gen_inverse_semigroup(&mut rng, spec.max_size)?)
        }
        InstanceKind::DiscretePseudobasis => {
            let (space, members) = gen_discrete_pseudobasis(&mut rng, spec.max_size);
            Instance::Space { space, members }
        }
    })
}

fn carrier(n: usize) -> Carrier {
    Carrier::new((0..n).map(|i| format!("p{i}"))).unwrap()
}

/// Random DAG on index order, closed reflexively and transitively.
pub fn gen_poset(rng: &mut XorShift64Star, max_size: usize) -> RelStructure {
    let n = 1 + rng.below(max_size as u64) as usize;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.chance(1, 3) {
                edges.push((i, j));
            }
        }
    }
    let rel = RelStructure::new(carrier(n), &edges).unwrap();
    let rel = rel.reflexive_closure().transitive_closure();
    debug_assert!(rel.validate_pseudobasis().passed());
    rel
}

/// Random relation, transitively closed, with loops added at elements
/// lacking a predecessor so the carrier comes out round.
pub fn gen_round_transitive(rng: &mut XorShift64Star, max_size: usize) -> RelStructure {
    let n = 1 + rng.below(max_size as u64) as usize;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if rng.chance(1, 3) {
                edges.push((i, j));
            }
        }
    }
    let rel = RelStructure::new(carrier(n), &edges).unwrap().transitive_closure();
    let mut edges = rel.edge_pairs();
    for p in 0..n {
        if rel.preds(p).is_empty() {
            edges.push((p, p));
        }
    }
    let rel = RelStructure::new(rel.carrier().clone(), &edges).unwrap();
    debug_assert!(rel.validate_pseudobasis().passed());
    rel
}

/// Random sub-meet-semilattice of a small powerset, with zero; the order
/// relation is the canonical one by default, occasionally thinned to a
/// strictly smaller valid auxiliary relation.
pub fn gen_meet_semilattice(
    rng: &mut XorShift64Star,
    max_size: usize,
) -> Result<OrderedInvSemigroup> {
    let width = 1 + rng.below(3) as usize;
    let count = 1 + rng.below(4) as usize;
    let gens: Vec<u32> = (0..count).map(|_| 1 + rng.below((1 << width) - 1) as u32).collect();
    let base = invsemi::meet_semilattice(width, &gens)?;
    if base.size() > max_size.max(4) {
        // deterministic retry with the continued stream
        return gen_meet_semilattice(rng, max_size);
    }
    with_random_order(rng, base)
}

/// Random sub-inverse-semigroup of `I_n` (n ≤ 3) containing the zero map.
pub fn gen_inverse_semigroup(
    rng: &mut XorShift64Star,
    max_size: usize,
) -> Result<OrderedInvSemigroup> {
    let n = 2 + rng.below(2) as usize;
    // skip the empty map so the semigroup has non-zero elements
    let all = &all_partial_bijections(n)[1..];
    loop {
        let count = 1 + rng.below(3) as usize;
        let gens: Vec<_> =
            (0..count).map(|_| all[rng.below(all.len() as u64) as usize].clone()).collect();
        let base = partial_bijection_semigroup(n, &gens)?;
        if base.size() <= max_size.max(8) {
            return with_random_order(rng, base);
        }
    }
}

/// Keep the canonical order, or try to thin it by dropping some reflexive
/// pairs; the thinned relation is kept only when still pseudobasic.
fn with_random_order(
    rng: &mut XorShift64Star,
    base: invsemi::InvSemigroup,
) -> Result<OrderedInvSemigroup> {
    let canonical = OrderedInvSemigroup::new(base.clone(), None)?;
    if !rng.chance(1, 3) {
        return Ok(canonical);
    }
    let edges: Vec<(usize, usize)> = canonical
        .prec()
        .edge_pairs()
        .into_iter()
        .filter(|&(p, q)| !(p == q && rng.chance(1, 2)))
        .collect();
    let prec = RelStructure::new(base.elements().clone(), &edges)?;
    let thinned = OrderedInvSemigroup::new(base, Some(prec))?;
    if thinned.validate_pseudobasic().passed() {
        Ok(thinned)
    } else {
        Ok(canonical)
    }
}

/// Discrete space with a random pseudobasis: all singletons plus a random
/// sprinkling of larger subsets.
pub fn gen_discrete_pseudobasis(
    rng: &mut XorShift64Star,
    max_size: usize,
) -> (FiniteSpace, Vec<Subset>) {
    let k = 1 + rng.below(max_size.min(4) as u64) as usize;
    let points = carrier(k);
    let space = FiniteSpace::discrete(points.clone()).unwrap();
    let mut members: Vec<Subset> = (0..k).map(|i| points.singleton(i)).collect();
    for mask in 1u128..(1 << k) {
        let s = points.subset_from_mask(mask);
        if s.len() > 1 && rng.chance(1, 3) {
            members.push(s);
        }
    }
    members.sort_by_key(|m| m.mask());
    (space, members)
}

/// A selection problem with machine-checkable hypotheses: `Δ` is the
/// family of subsets whose union with a fixed round centred `U` stays
/// centred, and `Γ` is a descending chain of finite sets threaded through
/// a reflexive element of `U`.
pub struct SelectionInstance {
    pub rel: RelStructure,
    pub delta: Vec<Subset>,
    pub gamma: Vec<Subset>,
    pub theta: Vec<usize>,
}

pub fn gen_selection_instance(seed: u64, max_size: usize) -> SelectionInstance {
    let mut rng = XorShift64Star::new(seed);
    let rel = gen_round_transitive(&mut rng, max_size.min(5));
    let n = rel.size();

    let maximal = tight::maximal_round_centred(&rel).unwrap();
    let u = maximal[rng.below(maximal.len() as u64) as usize];
    // a round set on a finite transitive carrier always contains a
    // reflexive element (descending chains in it must cycle); ∅ falls back
    // to any reflexive carrier element, which roundness of P provides
    let c = u
        .iter()
        .find(|&x| rel.prec(x, x))
        .or_else(|| (0..n).find(|&x| rel.prec(x, x)))
        .expect("finite round transitive relations have a reflexive element");

    let delta: Vec<Subset> = (0u128..(1 << n))
        .map(|m| rel.carrier().subset_from_mask(m))
        .filter(|d| rel.is_centred(u.union(*d)))
        .collect();

    // every level contains c, so gamma[0] = {c} ≺ gamma[i] witnesses the
    // roundness of the whole family (c ≺ c)
    let len = 1 + rng.below(3) as usize;
    let mut gamma: Vec<Subset> = vec![rel.carrier().singleton(c)];
    for _ in 1..len {
        let preds = rel.down_image(*gamma.last().unwrap()).unwrap();
        let mut next = rel.carrier().singleton(c);
        for x in preds.iter() {
            if rng.chance(1, 3) {
                next.insert(x);
            }
        }
        gamma.push(next);
    }
    let theta = vec![0; gamma.len()];
    SelectionInstance { rel, delta, gamma, theta }
}

/// A stretch instance with valid preconditions: take a tight `T`, a round
/// `R ⊆ T`, `Q ⊆ T` and `S` outside `T`.
pub struct StretchInstance {
    pub rel: RelStructure,
    pub q: Subset,
    pub r: Subset,
    pub s: Subset,
}

pub fn gen_stretch_instance(seed: u64, max_size: usize) -> StretchInstance {
    let mut rng = XorShift64Star::new(seed);
    let rel = gen_round_transitive(&mut rng, max_size.min(5));
    let tights = tight::enumerate_tight(&rel).unwrap().sets;
    let t = tights[rng.below(tights.len() as u64) as usize].members();

    let mut r = rel.carrier().empty();
    for x in t.iter() {
        if rng.chance(1, 2) {
            r.insert(x);
        }
    }
    // shrink to a round subset by discarding elements without a
    // predecessor inside
    loop {
        let stale: Vec<usize> = r.iter().filter(|&x| !rel.preds(x).intersects(r)).collect();
        if stale.is_empty() {
            break;
        }
        for x in stale {
            r.remove(x);
        }
    }

    let mut q = rel.carrier().empty();
    for x in t.iter() {
        if rng.chance(1, 3) {
            q.insert(x);
        }
    }
    let mut s = rel.carrier().empty();
    for x in t.complement().iter() {
        if rng.chance(1, 2) {
            s.insert(x);
        }
    }
    StretchInstance { rel, q, r, s }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tightspec::rel::CoverKind;

    #[test]
    fn generation_is_deterministic() {
        for kind in InstanceKind::ALL {
            let spec = InstanceGenSpec { seed: 7, max_size: 5, kind };
            let a = gen_instance(&spec).unwrap();
            let b = gen_instance(&spec).unwrap();
            assert_eq!(a.dump(), b.dump(), "{kind:?}");
        }
    }

    #[test]
    fn generated_rels_are_pseudobases() {
        for seed in 0..40 {
            for kind in [InstanceKind::Poset, InstanceKind::RoundTransitive] {
                let inst = gen_instance(&InstanceGenSpec { seed, max_size: 6, kind }).unwrap();
                let Instance::Rel(rel) = inst else { panic!() };
                assert!(rel.validate_pseudobasis().passed(), "seed {seed} {kind:?}");
            }
        }
    }

    #[test]
    fn generated_semigroups_validate() {
        for seed in 0..25 {
            for kind in [InstanceKind::MeetSemilattice, InstanceKind::InverseSemigroup] {
                let inst = gen_instance(&InstanceGenSpec { seed, max_size: 10, kind }).unwrap();
                let Instance::Semigroup(s) = inst else { panic!() };
                assert!(s.validate_pseudobasic().passed(), "seed {seed} {kind:?}");
            }
        }
    }

    #[test]
    fn selection_instances_have_valid_hypotheses() {
        for seed in 0..25 {
            let inst = gen_selection_instance(seed, 5);
            let problem = tight::SelectionProblem {
                rel: &inst.rel,
                delta: tight::Delta::List(inst.delta.clone()),
                gamma: inst.gamma.clone(),
                theta: Some(inst.theta.clone()),
            };
            assert!(problem.hypothesis_report().unwrap().passed(), "seed {seed}");
        }
    }

    #[test]
    fn stretch_instances_satisfy_preconditions() {
        for seed in 0..25 {
            let inst = gen_stretch_instance(seed, 5);
            assert!(inst.rel.is_round(inst.r));
            assert!(!inst.rel.meet_cover(CoverKind::Compact, inst.q.union(inst.r), inst.s));
        }
    }
}
