//! Cayley-table inverse semigroups: validation, the canonical order,
//! cosets and their partial product, and ordered/pseudobasic structure.
//!
//! Subsets of a semigroup are bit vectors; set products `AB` are computed
//! by a double loop over member pairs, which is all these sizes need.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::carrier::{Carrier, Subset};
use crate::error::{Error, Result};
use crate::rel::RelStructure;
use crate::report::ValidationReport;

/// A finite inverse semigroup with a dense product table, the involution
/// and the detected zero. Valid by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvSemigroup {
    elements: Carrier,
    table: Vec<usize>,
    inv: Vec<usize>,
    zero: Option<usize>,
    idempotents: Subset,
    /// `leq[s]` is the mask of `{t : s ≤ t}` in the canonical order.
    leq: Vec<u128>,
}

/// Validate an indexed product table: associativity, existence and
/// uniqueness of generalised inverses (computed when not supplied),
/// idempotent commutation and zero detection. Failures carry witnesses.
pub fn validate_table(
    elements: &Carrier,
    table: &[usize],
    inv: Option<&[usize]>,
) -> ValidationReport {
    let n = elements.size();
    let mut report = ValidationReport::new();
    if table.len() != n * n || table.iter().any(|&x| x >= n) {
        report.fail("table-shape", serde_json::json!({ "expected": n * n, "got": table.len() }));
        return report;
    }
    report.pass("table-shape");
    let mul = |a: usize, b: usize| table[a * n + b];

    let mut assoc = None;
    'assoc: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                    assoc = Some((a, b, c));
                    break 'assoc;
                }
            }
        }
    }
    match assoc {
        None => report.pass("associative"),
        Some((a, b, c)) => report.fail(
            "associative",
            serde_json::json!({
                "a": elements.label(a), "b": elements.label(b), "c": elements.label(c)
            }),
        ),
    }

    let mut inverse_witness = None;
    let mut computed_inv = vec![0usize; n];
    for s in 0..n {
        let candidates: Vec<usize> =
            (0..n).filter(|&t| mul(mul(s, t), s) == s && mul(mul(t, s), t) == t).collect();
        if candidates.len() != 1 {
            inverse_witness = Some((s, candidates.len()));
            break;
        }
        computed_inv[s] = candidates[0];
    }
    match inverse_witness {
        None => report.pass("inverses-exist-unique"),
        Some((s, count)) => report.fail(
            "inverses-exist-unique",
            serde_json::json!({ "s": elements.label(s), "generalised_inverses": count }),
        ),
    }
    if let Some(given) = inv {
        let consistent = inverse_witness.is_none()
            && given.len() == n
            && given.iter().enumerate().all(|(s, &t)| computed_inv[s] == t);
        report.push(
            "inverse-map-consistent",
            consistent,
            Some(serde_json::json!("declared involution must match the computed one")),
        );
    }

    let idem: Vec<usize> = (0..n).filter(|&e| mul(e, e) == e).collect();
    let mut commute = None;
    'comm: for &e in &idem {
        for &f in &idem {
            if mul(e, f) != mul(f, e) {
                commute = Some((e, f));
                break 'comm;
            }
        }
    }
    match commute {
        None => report.pass("idempotents-commute"),
        Some((e, f)) => report.fail(
            "idempotents-commute",
            serde_json::json!({ "e": elements.label(e), "f": elements.label(f) }),
        ),
    }

    let zero = (0..n).find(|&z| (0..n).all(|s| mul(z, s) == z && mul(s, z) == z));
    report.advisory(
        "zero-element",
        true,
        Some(match zero {
            Some(z) => serde_json::json!({ "zero": elements.label(z) }),
            None => serde_json::json!("none"),
        }),
    );
    report
}

impl InvSemigroup {
    pub fn new(elements: Carrier, table: Vec<usize>, declared_zero: Option<usize>) -> Result<Self> {
        let report = validate_table(&elements, &table, None);
        if !report.passed() {
            return Err(Error::Schema(format!(
                "not an inverse semigroup: {}",
                report.failures().next().unwrap().name
            )));
        }
        let n = elements.size();
        let mul = |a: usize, b: usize| table[a * n + b];
        let mut inv = vec![0usize; n];
        for s in 0..n {
            inv[s] = (0..n).find(|&t| mul(mul(s, t), s) == s && mul(mul(t, s), t) == t).unwrap();
        }
        let zero = (0..n).find(|&z| (0..n).all(|s| mul(z, s) == z && mul(s, z) == z));
        if let Some(dz) = declared_zero {
            if zero != Some(dz) {
                return Err(Error::Schema(format!(
                    "declared zero {:?} is not the zero of the table",
                    elements.label(dz)
                )));
            }
        }
        let mut idempotents = elements.empty();
        for e in 0..n {
            if mul(e, e) == e {
                idempotents.insert(e);
            }
        }
        let mut leq = vec![0u128; n];
        for s in 0..n {
            for t in 0..n {
                // s ≤ t ⇔ s⁻¹s = s⁻¹t
                if mul(inv[s], s) == mul(inv[s], t) {
                    leq[s] |= 1 << t;
                }
            }
        }
        Ok(InvSemigroup { elements, table, inv, zero, idempotents, leq })
    }

    pub fn elements(&self) -> &Carrier {
        &self.elements
    }

    pub fn size(&self) -> usize {
        self.elements.size()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn idempotents(&self) -> Subset {
        self.idempotents
    }

    pub fn leq(&self, s: usize, t: usize) -> bool {
        self.leq[s] >> t & 1 == 1
    }

    /// The canonical order `s ≤ t ⇔ s⁻¹s = s⁻¹t` as a relation structure.
    pub fn canonical_order(&self) -> RelStructure {
        let mut edges = Vec::new();
        for s in 0..self.size() {
            for t in 0..self.size() {
                if self.leq(s, t) {
                    edges.push((s, t));
                }
            }
        }
        RelStructure::new(self.elements.clone(), &edges).expect("edges in range")
    }

    /// Do the equivalent formulations of the canonical order agree?
    /// `s⁻¹s = s⁻¹t`, `ss⁻¹ = ts⁻¹`, `s ∈ Et` and `s ∈ tE` must coincide.
    pub fn canonical_order_forms_agree(&self) -> bool {
        let n = self.size();
        (0..n).all(|s| {
            (0..n).all(|t| {
                let a = self.mul(self.inv(s), s) == self.mul(self.inv(s), t);
                let b = self.mul(s, self.inv(s)) == self.mul(t, self.inv(s));
                let c = self.idempotents.iter().any(|e| self.mul(e, t) == s);
                let d = self.idempotents.iter().any(|e| self.mul(t, e) == s);
                a == b && b == c && c == d
            })
        })
    }

    /// Pointwise product `AB = {ab : a ∈ A, b ∈ B}`.
    pub fn set_mul(&self, a: Subset, b: Subset) -> Subset {
        let mut out = self.elements.empty();
        for x in a.iter() {
            for y in b.iter() {
                out.insert(self.mul(x, y));
            }
        }
        out
    }

    pub fn set_inv(&self, a: Subset) -> Subset {
        let mut out = self.elements.empty();
        for x in a.iter() {
            out.insert(self.inv(x));
        }
        out
    }

    /// Upwards closure `A^≤` in the canonical order.
    pub fn up_leq(&self, a: Subset) -> Subset {
        let mut acc = 0u128;
        for x in a.iter() {
            acc |= self.leq[x];
        }
        self.elements.subset_from_mask(acc)
    }
}

/// A coset: `C C⁻¹ C = C^≤ = C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coset {
    members: Subset,
}

impl Coset {
    pub fn new(s: &InvSemigroup, members: Subset) -> Result<Self> {
        if !is_coset(s, members) {
            return Err(Error::Precondition("subset is not a coset".into()));
        }
        Ok(Coset { members })
    }

    pub fn members(&self) -> Subset {
        self.members
    }
}

/// Literal coset test.
pub fn is_coset(s: &InvSemigroup, c: Subset) -> bool {
    let up = s.up_leq(c);
    let ccc = s.set_mul(s.set_mul(c, s.set_inv(c)), c);
    ccc == up && up == c
}

/// Upwards closure of a subset with `CC⁻¹C ⊆ C^≤` is a coset.
pub fn coset_closure(s: &InvSemigroup, c: Subset) -> Result<Coset> {
    let up = s.up_leq(c);
    let ccc = s.set_mul(s.set_mul(c, s.set_inv(c)), c);
    if !ccc.is_subset_of(up) {
        return Err(Error::Precondition("coset closure needs CC⁻¹C ⊆ C^≤".into()));
    }
    debug_assert!(is_coset(s, up));
    Ok(Coset { members: up })
}

/// The coset-groupoid product: defined iff `(C⁻¹C)^≤ = (DD⁻¹)^≤`, with
/// value `(CD)^≤`; `None` signals a non-composable pair.
pub fn coset_product(s: &InvSemigroup, c: &Coset, d: &Coset) -> Option<Coset> {
    let source = s.up_leq(s.set_mul(s.set_inv(c.members), c.members));
    let range = s.up_leq(s.set_mul(d.members, s.set_inv(d.members)));
    if source != range {
        return None;
    }
    let product = s.up_leq(s.set_mul(c.members, d.members));
    debug_assert!(is_coset(s, product), "coset product must be a coset");
    Some(Coset { members: product })
}

/// An inverse semigroup with a transitive left-auxiliary relation `≺ ⊆ ≤`
/// preserving products and inverses. Construction only ties the carriers
/// together; [`OrderedInvSemigroup::validate_ordered`] reports the axioms.
#[derive(Clone, Debug)]
pub struct OrderedInvSemigroup {
    base: InvSemigroup,
    prec: RelStructure,
}

/// The restriction of a pseudobasic semigroup to `P = S∖{0}`, with the
/// index maps between the two carriers.
#[derive(Clone, Debug)]
pub struct PStructure {
    pub rel: RelStructure,
    /// `s_of_p[i]` is the semigroup index of the `i`-th element of `P`.
    pub s_of_p: Vec<usize>,
}

impl PStructure {
    /// Embed a subset of `P` as a subset of `S`.
    pub fn embed(&self, p: Subset, s_size: usize) -> Subset {
        let mut out = Subset::empty(s_size);
        for i in p.iter() {
            out.insert(self.s_of_p[i]);
        }
        out
    }

    /// Restrict a subset of `S` to `P` (dropping the zero if present).
    pub fn restrict(&self, s: Subset) -> Subset {
        let mut out = Subset::empty(self.s_of_p.len());
        for (i, &si) in self.s_of_p.iter().enumerate() {
            if s.contains(si) {
                out.insert(i);
            }
        }
        out
    }
}

impl OrderedInvSemigroup {
    /// Pair a semigroup with an auxiliary relation; `None` takes the
    /// canonical order, which always satisfies the ordered axioms.
    pub fn new(base: InvSemigroup, prec: Option<RelStructure>) -> Result<Self> {
        let prec = match prec {
            Some(r) => {
                if r.carrier() != base.elements() {
                    return Err(Error::Schema("prec must live on the semigroup carrier".into()));
                }
                r
            }
            None => base.canonical_order(),
        };
        Ok(OrderedInvSemigroup { base, prec })
    }

    pub fn base(&self) -> &InvSemigroup {
        &self.base
    }

    pub fn prec(&self) -> &RelStructure {
        &self.prec
    }

    /// Does `s ≺ t` hold for some `t` (written `s ≺ S`)?
    pub fn prec_something(&self, s: usize) -> bool {
        !self.prec.succs(s).is_empty()
    }

    /// The ordered-inverse-semigroup axioms, witnessed.
    pub fn validate_ordered(&self) -> ValidationReport {
        let n = self.base.size();
        let mut report = ValidationReport::new();

        let mut transitive = None;
        'tr: for p in 0..n {
            for q in 0..n {
                if self.prec.prec(p, q) {
                    let beyond = self.prec.succs(q).minus(self.prec.succs(p));
                    let first = beyond.iter().next();
                    if let Some(r) = first {
                        transitive = Some((p, q, r));
                        break 'tr;
                    }
                }
            }
        }
        push3(&mut report, "prec-transitive", &self.base, transitive);

        let within = (0..n)
            .flat_map(|q| (0..n).map(move |r| (q, r)))
            .find(|&(q, r)| self.prec.prec(q, r) && !self.base.leq(q, r));
        match within {
            None => report.pass("prec-within-canonical"),
            Some((q, r)) => report.fail(
                "prec-within-canonical",
                serde_json::json!({
                    "q": self.base.elements().label(q),
                    "r": self.base.elements().label(r)
                }),
            ),
        }

        let mut left_aux = None;
        'la: for q in 0..n {
            for q2 in 0..n {
                if !self.prec.prec(q, q2) {
                    continue;
                }
                for r in 0..n {
                    if self.base.leq(q2, r) && !self.prec.prec(q, r) {
                        left_aux = Some((q, q2, r));
                        break 'la;
                    }
                }
            }
        }
        push3(&mut report, "left-auxiliary", &self.base, left_aux);

        let mut mult = None;
        'mu: for q in 0..n {
            for q2 in 0..n {
                if !self.prec.prec(q, q2) {
                    continue;
                }
                for r in 0..n {
                    for r2 in 0..n {
                        if self.prec.prec(r, r2)
                            && !self.prec.prec(self.base.mul(q, r), self.base.mul(q2, r2))
                        {
                            mult = Some((q, r, q2));
                            break 'mu;
                        }
                    }
                }
            }
        }
        push3(&mut report, "multiplicative", &self.base, mult);

        let invertive = (0..n)
            .flat_map(|q| (0..n).map(move |r| (q, r)))
            .find(|&(q, r)| self.prec.prec(q, r) && !self.prec.prec(self.base.inv(q), self.base.inv(r)));
        match invertive {
            None => report.pass("invertive"),
            Some((q, r)) => report.fail(
                "invertive",
                serde_json::json!({
                    "q": self.base.elements().label(q),
                    "r": self.base.elements().label(r)
                }),
            ),
        }

        report
    }

    /// The derived law `q ≺ r ⇒ qs ≺ rs` under `r⁻¹r ≤ ss⁻¹`. With
    /// `arbitrary_s` the side condition `s ≺ S` is dropped, which the
    /// stated axioms do not guarantee; that variant is reported as an
    /// advisory line by [`Self::validate_pseudobasic`].
    pub fn ac_bc_law_holds(&self, arbitrary_s: bool) -> Option<(usize, usize, usize)> {
        let n = self.base.size();
        for s in 0..n {
            if !arbitrary_s && !self.prec_something(s) {
                continue;
            }
            let ss = self.base.mul(s, self.base.inv(s));
            for r in 0..n {
                if !self.base.leq(self.base.mul(self.base.inv(r), r), ss) {
                    continue;
                }
                for q in 0..n {
                    if self.prec.prec(q, r)
                        && !self.prec.prec(self.base.mul(q, s), self.base.mul(r, s))
                    {
                        return Some((q, r, s));
                    }
                }
            }
        }
        None
    }

    /// The pseudobasic axioms: ordered, zero present, and `P = S∖{0}` an
    /// abstract pseudobasis under the restricted relation. The `ac<bc` law
    /// for `s ≺ S` is checked as a consequence; its arbitrary-`s`
    /// strengthening is reported as advisory.
    pub fn validate_pseudobasic(&self) -> ValidationReport {
        let mut report = self.validate_ordered();
        match self.base.zero() {
            Some(z) => report.advisory(
                "zero-element",
                true,
                Some(serde_json::json!({ "zero": self.base.elements().label(z) })),
            ),
            None => {
                report.fail("zero-element", serde_json::json!("pseudobasic semigroups need a zero"));
                return report;
            }
        }
        match self.p_structure() {
            Ok(p) => report.absorb("p", p.rel.validate_pseudobasis()),
            Err(e) => report.fail("p", serde_json::json!(e.to_string())),
        }

        push3(&mut report, "ac-bc", &self.base, self.ac_bc_law_holds(false));
        let arb = self.ac_bc_law_holds(true);
        report.advisory(
            "ac-bc-arbitrary-s",
            arb.is_none(),
            arb.map(|(q, r, s)| {
                serde_json::json!({
                    "q": self.base.elements().label(q),
                    "r": self.base.elements().label(r),
                    "s": self.base.elements().label(s)
                })
            }),
        );
        report
    }

    /// Restrict `≺` to `P = S∖{0}`.
    pub fn p_structure(&self) -> Result<PStructure> {
        let z = self
            .base
            .zero()
            .ok_or_else(|| Error::Precondition("p_structure needs a zero".into()))?;
        let s_of_p: Vec<usize> = (0..self.base.size()).filter(|&i| i != z).collect();
        let labels: Vec<String> =
            s_of_p.iter().map(|&i| self.base.elements().label(i).to_string()).collect();
        let carrier = Carrier::with_cap(labels, s_of_p.len().max(1))?;
        let mut edges = Vec::new();
        for (i, &si) in s_of_p.iter().enumerate() {
            for (j, &sj) in s_of_p.iter().enumerate() {
                if self.prec.prec(si, sj) {
                    edges.push((i, j));
                }
            }
        }
        Ok(PStructure { rel: RelStructure::new(carrier, &edges)?, s_of_p })
    }
}

fn push3(
    report: &mut ValidationReport,
    name: &str,
    s: &InvSemigroup,
    witness: Option<(usize, usize, usize)>,
) {
    match witness {
        None => report.pass(name),
        Some((a, b, c)) => report.fail(
            name,
            serde_json::json!({
                "first": s.elements().label(a),
                "second": s.elements().label(b),
                "third": s.elements().label(c)
            }),
        ),
    }
}

/// Meet-semilattice on a family of bit masks, closed under intersection,
/// with the empty mask as zero. Labels are the masks in binary, low bit
/// first, and the empty mask is labelled `0`.
pub fn meet_semilattice(width: usize, generators: &[u32]) -> Result<InvSemigroup> {
    let mut masks: Vec<u32> = vec![0];
    masks.extend_from_slice(generators);
    loop {
        let mut added = false;
        let snapshot = masks.clone();
        for &a in &snapshot {
            for &b in &snapshot {
                if !masks.contains(&(a & b)) {
                    masks.push(a & b);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    masks.sort_unstable();
    masks.dedup();
    let labels: Vec<String> = masks
        .iter()
        .map(|&m| {
            if m == 0 {
                "0".to_string()
            } else {
                (0..width).map(|b| if m >> b & 1 == 1 { '1' } else { '0' }).collect()
            }
        })
        .collect();
    let elements = Carrier::new(labels)?;
    let n = masks.len();
    let index: BTreeMap<u32, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut table = vec![0usize; n * n];
    for (i, &a) in masks.iter().enumerate() {
        for (j, &b) in masks.iter().enumerate() {
            table[i * n + j] = index[&(a & b)];
        }
    }
    InvSemigroup::new(elements, table, Some(index[&0]))
}

/// The powerset of an `n`-element set as a meet-semilattice under
/// intersection, with `∅` as zero.
pub fn boolean_semilattice(n: usize) -> Result<InvSemigroup> {
    assert!(n >= 1 && n <= 4);
    let gens: Vec<u32> = (1..(1u32 << n)).collect();
    meet_semilattice(n, &gens)
}

/// E5: the meet-semilattice `{0, x, y, t}` with `x ∧ y = 0`; its non-zero
/// part is the E3 relation.
pub fn e5() -> InvSemigroup {
    let elements = Carrier::new(["0", "x", "y", "t"]).unwrap();
    let (o, t) = (0usize, 3usize);
    let meet = |a: usize, b: usize| -> usize {
        if a == b {
            a
        } else if a == o || b == o {
            o
        } else if a == t {
            b
        } else if b == t {
            a
        } else {
            o
        }
    };
    let mut table = vec![0usize; 16];
    for a in 0..4 {
        for b in 0..4 {
            table[a * 4 + b] = meet(a, b);
        }
    }
    InvSemigroup::new(elements, table, Some(o)).unwrap()
}

/// E5 with the strictly smaller auxiliary relation `≺ = ≤ ∖ {(t,t)}`,
/// still pseudobasic; exercises a non-reflexive `≺`.
pub fn e5_strict() -> OrderedInvSemigroup {
    let base = e5();
    let leq = base.canonical_order();
    let t = base.elements().index_of("t").unwrap();
    let edges: Vec<(usize, usize)> =
        leq.edge_pairs().into_iter().filter(|&(p, q)| !(p == t && q == t)).collect();
    let prec = RelStructure::new(base.elements().clone(), &edges).unwrap();
    OrderedInvSemigroup::new(base, Some(prec)).unwrap()
}

/// A partial bijection on `{1..n}` as an image table.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PartialBijection(pub Vec<Option<usize>>);

impl PartialBijection {
    pub fn label(&self) -> String {
        let entries: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter_map(|(x, y)| y.map(|y| format!("{}→{}", x + 1, y + 1)))
            .collect();
        if entries.is_empty() {
            "0".to_string()
        } else {
            entries.join("|")
        }
    }

    fn compose(&self, other: &PartialBijection) -> PartialBijection {
        // (f g)(x) = f(g(x))
        PartialBijection(other.0.iter().map(|y| y.and_then(|y| self.0[y])).collect())
    }

    fn inverse(&self) -> PartialBijection {
        let mut out = vec![None; self.0.len()];
        for (x, y) in self.0.iter().enumerate() {
            if let Some(y) = y {
                out[*y] = Some(x);
            }
        }
        PartialBijection(out)
    }
}

/// Every partial bijection of `{1..n}` in a fixed deterministic order
/// (by domain mask, then image tuple); the empty map comes first.
pub fn all_partial_bijections(n: usize) -> Vec<PartialBijection> {
    let mut out = Vec::new();
    for dom in 0u32..(1 << n) {
        let dom_elems: Vec<usize> = (0..n).filter(|&i| dom >> i & 1 == 1).collect();
        let mut stack: Vec<(usize, Vec<Option<usize>>, u32)> = vec![(0, vec![None; n], 0)];
        let mut maps = Vec::new();
        while let Some((i, map, used)) = stack.pop() {
            if i == dom_elems.len() {
                maps.push(PartialBijection(map));
                continue;
            }
            for y in (0..n).rev() {
                if used >> y & 1 == 0 {
                    let mut next = map.clone();
                    next[dom_elems[i]] = Some(y);
                    stack.push((i + 1, next, used | 1 << y));
                }
            }
        }
        maps.sort();
        out.extend(maps);
    }
    out
}

/// The symmetric inverse monoid `I_n` of partial bijections on an
/// `n`-element set, for `n ≤ 3`. The empty map is the zero, at index 0.
pub fn symmetric_inverse_monoid(n: usize) -> Result<InvSemigroup> {
    if n == 0 || n > 3 {
        return Err(Error::TooLarge("symmetric inverse monoids are built for 1 ≤ n ≤ 3".into()));
    }
    from_partial_bijections(n, all_partial_bijections(n))
}

/// Build the inverse semigroup generated by a set of partial bijections
/// together with the empty map (closing under composition and inverse).
pub fn partial_bijection_semigroup(n: usize, generators: &[PartialBijection]) -> Result<InvSemigroup> {
    let mut maps: Vec<PartialBijection> = vec![PartialBijection(vec![None; n])];
    for g in generators {
        if !maps.contains(g) {
            maps.push(g.clone());
        }
    }
    loop {
        let mut added = false;
        let snapshot = maps.clone();
        for f in &snapshot {
            let fi = f.inverse();
            if !maps.contains(&fi) {
                maps.push(fi);
                added = true;
            }
            for g in &snapshot {
                let fg = f.compose(g);
                if !maps.contains(&fg) {
                    maps.push(fg);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    maps.sort();
    from_partial_bijections(n, maps)
}

fn from_partial_bijections(n: usize, maps: Vec<PartialBijection>) -> Result<InvSemigroup> {
    let labels: Vec<String> = maps.iter().map(|m| m.label()).collect();
    let elements = Carrier::new(labels)?;
    let k = maps.len();
    let index = |m: &PartialBijection| maps.iter().position(|x| x == m).unwrap();
    let mut table = vec![0usize; k * k];
    for (i, f) in maps.iter().enumerate() {
        for (j, g) in maps.iter().enumerate() {
            table[i * k + j] = index(&f.compose(g));
        }
    }
    let zero = index(&PartialBijection(vec![None; n]));
    InvSemigroup::new(elements, table, Some(zero))
}

/// On-disk semigroup format: a labelled Cayley table, optional zero and
/// optional auxiliary relation (defaulting to the canonical order).
#[derive(Debug, Serialize, Deserialize)]
pub struct SemigroupFile {
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prec: Option<Vec<(String, String)>>,
}

impl SemigroupFile {
    pub fn from_ordered(s: &OrderedInvSemigroup) -> Self {
        let base = s.base();
        let c = base.elements();
        SemigroupFile {
            elements: c.labels().to_vec(),
            table: (0..base.size())
                .map(|a| (0..base.size()).map(|b| c.label(base.mul(a, b)).to_string()).collect())
                .collect(),
            zero: base.zero().map(|z| c.label(z).to_string()),
            prec: Some(
                s.prec()
                    .edge_pairs()
                    .into_iter()
                    .map(|(p, q)| (c.label(p).to_string(), c.label(q).to_string()))
                    .collect(),
            ),
        }
    }
}

/// Parse a semigroup file; the table report is returned alongside so
/// callers can surface witnesses, and the semigroup only when it passed.
pub fn parse_semigroup_report(
    text: &str,
    cap: usize,
) -> Result<(Option<OrderedInvSemigroup>, ValidationReport)> {
    let file: SemigroupFile = serde_json::from_str(text)?;
    let elements = Carrier::with_cap(file.elements.clone(), cap)?;
    let n = elements.size();
    if file.table.len() != n || file.table.iter().any(|row| row.len() != n) {
        return Err(Error::Schema(format!("table must be {n}×{n}")));
    }
    let mut table = Vec::with_capacity(n * n);
    for row in &file.table {
        for cell in row {
            table.push(
                elements.index_of(cell).ok_or_else(|| Error::UnknownLabel(cell.clone()))?,
            );
        }
    }
    let report = validate_table(&elements, &table, None);
    if !report.passed() {
        return Ok((None, report));
    }
    let zero = match &file.zero {
        Some(z) => Some(elements.index_of(z).ok_or_else(|| Error::UnknownLabel(z.clone()))?),
        None => None,
    };
    let base = InvSemigroup::new(elements.clone(), table, zero)?;
    let prec = match &file.prec {
        Some(pairs) => Some(RelStructure::from_labelled_pairs(elements, pairs)?),
        None => None,
    };
    Ok((Some(OrderedInvSemigroup::new(base, prec)?), report))
}

pub fn parse_semigroup(text: &str, cap: usize) -> Result<OrderedInvSemigroup> {
    match parse_semigroup_report(text, cap)? {
        (Some(s), _) => Ok(s),
        (None, report) => Err(Error::Schema(format!(
            "not an inverse semigroup: {}",
            report.failures().next().unwrap().name
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(s: &InvSemigroup, labels: &[&str]) -> Subset {
        s.elements().subset_from_labels(labels.iter().copied()).unwrap()
    }

    #[test]
    fn e5_is_a_valid_semilattice() {
        let s = e5();
        assert_eq!(s.size(), 4);
        assert_eq!(s.zero(), Some(0));
        // every element is a self-inverse idempotent
        assert_eq!(s.idempotents(), s.elements().full());
        for i in 0..4 {
            assert_eq!(s.inv(i), i);
        }
        // canonical order: x ≤ t, y ≤ t, 0 below everything
        let x = s.elements().index_of("x").unwrap();
        let y = s.elements().index_of("y").unwrap();
        let t = s.elements().index_of("t").unwrap();
        assert!(s.leq(x, t) && s.leq(y, t) && s.leq(0, x) && !s.leq(t, x));
        assert!(s.canonical_order_forms_agree());
    }

    #[test]
    fn i2_is_valid() {
        let s = symmetric_inverse_monoid(2).unwrap();
        assert_eq!(s.size(), 7);
        assert!(s.canonical_order_forms_agree());
        // id on {1} sits below the full identity; 1→2 below the transposition
        let id1 = s.elements().index_of("1→1").unwrap();
        let id12 = s.elements().index_of("1→1|2→2").unwrap();
        let s12 = s.elements().index_of("1→2").unwrap();
        let swap = s.elements().index_of("1→2|2→1").unwrap();
        assert!(s.leq(id1, id12));
        assert!(s.leq(s12, swap));
        assert!(!s.leq(id12, id1));
        // reflexive
        for i in 0..s.size() {
            assert!(s.leq(i, i));
        }
    }

    #[test]
    fn i3_has_34_elements() {
        let s = symmetric_inverse_monoid(3).unwrap();
        assert_eq!(s.size(), 34);
    }

    #[test]
    fn left_zero_semigroup_is_rejected() {
        // two left zeros: ef = e ≠ f = fe, idempotents do not commute
        let c = Carrier::new(["e", "f"]).unwrap();
        let table = vec![0, 0, 1, 1];
        let report = validate_table(&c, &table, None);
        assert!(!report.check("idempotents-commute").unwrap().pass);
        assert!(InvSemigroup::new(c, table, None).is_err());
    }

    #[test]
    fn coset_examples() {
        let s = symmetric_inverse_monoid(2).unwrap();
        let swap = sub(&s, &["1→2|2→1"]);
        assert!(is_coset(&s, swap));

        let id1 = sub(&s, &["1→1"]);
        assert!(!is_coset(&s, id1));
        let closed = coset_closure(&s, id1).unwrap();
        assert_eq!(closed.members(), sub(&s, &["1→1", "1→1|2→2"]));

        // the whole semilattice E5 is a coset
        let e5 = e5();
        assert!(is_coset(&e5, e5.elements().full()));
    }

    #[test]
    fn coset_product_examples() {
        let s = symmetric_inverse_monoid(2).unwrap();
        let swap = Coset::new(&s, sub(&s, &["1→2|2→1"])).unwrap();
        let prod = coset_product(&s, &swap, &swap).unwrap();
        assert_eq!(prod.members(), sub(&s, &["1→1|2→2"]));

        // idempotent-containing coset multiplies to itself
        let e5 = e5();
        let t = Coset::new(&e5, sub(&e5, &["t"])).unwrap();
        assert_eq!(coset_product(&e5, &t, &t).unwrap().members(), t.members());

        // mismatched units
        let id1 = coset_closure(&s, sub(&s, &["1→1"])).unwrap();
        let id2 = coset_closure(&s, sub(&s, &["2→2"])).unwrap();
        assert!(coset_product(&s, &id1, &id2).is_none());
    }

    #[test]
    fn ordered_and_pseudobasic_validation() {
        let e5_leq = OrderedInvSemigroup::new(e5(), None).unwrap();
        assert!(e5_leq.validate_ordered().passed());
        let report = e5_leq.validate_pseudobasic();
        assert!(report.passed(), "{}", report.render_text());
        // P = S∖{0} is the E3 relation
        let p = e5_leq.p_structure().unwrap();
        assert_eq!(p.rel.edge_pairs(), crate::fixtures::e3().edge_pairs());

        let i2 = OrderedInvSemigroup::new(symmetric_inverse_monoid(2).unwrap(), None).unwrap();
        assert!(i2.validate_pseudobasic().passed());

        assert!(e5_strict().validate_pseudobasic().passed());

        // ≺ = {(x,t)} only: P is not round (x has no predecessor)
        let base = e5();
        let x = base.elements().index_of("x").unwrap();
        let t = base.elements().index_of("t").unwrap();
        let prec = RelStructure::new(base.elements().clone(), &[(x, t)]).unwrap();
        let bad = OrderedInvSemigroup::new(base, Some(prec)).unwrap();
        let report = bad.validate_pseudobasic();
        assert!(!report.passed());
        assert!(!report.check("p.carrier-round").unwrap().pass);
    }

    #[test]
    fn semigroup_json_round_trip() {
        let s = OrderedInvSemigroup::new(e5(), None).unwrap();
        let file = SemigroupFile::from_ordered(&s);
        let text = serde_json::to_string(&file).unwrap();
        let (parsed, report) = parse_semigroup_report(&text, 64).unwrap();
        assert!(report.passed());
        let parsed = parsed.unwrap();
        assert_eq!(parsed.base(), s.base());
        assert_eq!(parsed.prec().edge_pairs(), s.prec().edge_pairs());
    }
}
