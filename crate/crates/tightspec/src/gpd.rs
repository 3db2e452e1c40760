//! Finite groupoids, bisections and étale families, the tight groupoid of
//! a pseudobasic inverse semigroup, and groupoid recovery from an étale
//! pseudobasis of bisections.
//!
//! A groupoid is stored as an involution plus a dense partial product
//! table; composability must match the unit condition `g⁻¹g = hh⁻¹`
//! throughout, and the validator checks the stored table against it.
//!
//! Set products of bisections may be empty: a family is considered closed
//! under products when every pointwise product is again a member or empty,
//! matching the semigroup-with-zero view where `∅` is adjoined as the zero
//! element.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::carrier::{Carrier, Subset};
use crate::error::{Error, Result};
use crate::fintop;
use crate::invsemi::{InvSemigroup, OrderedInvSemigroup, PStructure};
use crate::rel::RelStructure;
use crate::report::ValidationReport;
use crate::tight::enumerate_tight;

/// A finite groupoid: elements with an involution and a partial product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    elements: Carrier,
    inv: Vec<usize>,
    product: Vec<Option<usize>>,
}

/// Validate groupoid data with witnesses: the involution, the unit
/// condition against the stored table, associativity where defined,
/// `g g⁻¹ g = g` and neutrality of units.
pub fn validate_groupoid(
    elements: &Carrier,
    inv: &[usize],
    product: &[Option<usize>],
) -> ValidationReport {
    let n = elements.size();
    let mut report = ValidationReport::new();
    if inv.len() != n
        || product.len() != n * n
        || inv.iter().any(|&x| x >= n)
        || product.iter().flatten().any(|&x| x >= n)
    {
        report.fail("shape", serde_json::json!({ "elements": n }));
        return report;
    }
    report.pass("shape");
    let prod = |a: usize, b: usize| product[a * n + b];

    let involution = (0..n).find(|&g| inv[inv[g]] != g);
    match involution {
        None => report.pass("involution"),
        Some(g) => report.fail("involution", serde_json::json!({ "g": elements.label(g) })),
    }

    // g⁻¹g and gg⁻¹ must be defined to speak about sources and ranges
    let self_products = (0..n).find(|&g| prod(inv[g], g).is_none() || prod(g, inv[g]).is_none());
    if let Some(g) = self_products {
        report.fail("self-products-defined", serde_json::json!({ "g": elements.label(g) }));
        return report;
    }
    report.pass("self-products-defined");
    let source = |g: usize| prod(inv[g], g).unwrap();
    let range = |g: usize| prod(g, inv[g]).unwrap();

    let mut unit_cond = None;
    'uc: for g in 0..n {
        for h in 0..n {
            if prod(g, h).is_some() != (source(g) == range(h)) {
                unit_cond = Some((g, h));
                break 'uc;
            }
        }
    }
    match unit_cond {
        None => report.pass("composability-unit-condition"),
        Some((g, h)) => report.fail(
            "composability-unit-condition",
            serde_json::json!({ "g": elements.label(g), "h": elements.label(h) }),
        ),
    }

    let mut assoc = None;
    'assoc: for g in 0..n {
        for h in 0..n {
            let Some(gh) = prod(g, h) else { continue };
            for k in 0..n {
                let lhs = prod(gh, k);
                let rhs = prod(h, k).and_then(|hk| prod(g, hk));
                if lhs != rhs {
                    assoc = Some((g, h, k));
                    break 'assoc;
                }
            }
        }
    }
    match assoc {
        None => report.pass("associative"),
        Some((g, h, k)) => report.fail(
            "associative",
            serde_json::json!({
                "g": elements.label(g), "h": elements.label(h), "k": elements.label(k)
            }),
        ),
    }

    let regular = (0..n).find(|&g| prod(range(g), g) != Some(g) || prod(g, source(g)) != Some(g));
    match regular {
        None => report.pass("units-neutral"),
        Some(g) => report.fail("units-neutral", serde_json::json!({ "g": elements.label(g) })),
    }

    report
}

impl FiniteGroupoid {
    pub fn new(elements: Carrier, inv: Vec<usize>, product: Vec<Option<usize>>) -> Result<Self> {
        let report = validate_groupoid(&elements, &inv, &product);
        if !report.passed() {
            return Err(Error::Schema(format!(
                "not a groupoid: {}",
                report.failures().next().unwrap().name
            )));
        }
        Ok(FiniteGroupoid { elements, inv, product })
    }

    pub fn elements(&self) -> &Carrier {
        &self.elements
    }

    pub fn size(&self) -> usize {
        self.elements.size()
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    pub fn prod(&self, g: usize, h: usize) -> Option<usize> {
        self.product[g * self.size() + h]
    }

    pub fn composable(&self, g: usize, h: usize) -> bool {
        self.prod(g, h).is_some()
    }

    /// The source unit `g⁻¹g`.
    pub fn source(&self, g: usize) -> usize {
        self.prod(self.inv[g], g).expect("validated groupoid")
    }

    /// The range unit `gg⁻¹`.
    pub fn range(&self, g: usize) -> usize {
        self.prod(g, self.inv[g]).expect("validated groupoid")
    }

    /// The unit space `G⁰ = {g⁻¹g}`.
    pub fn units(&self) -> Subset {
        let mut out = self.elements.empty();
        for g in 0..self.size() {
            out.insert(self.source(g));
        }
        out
    }

    /// Pointwise product of subsets over composable pairs.
    pub fn set_mul(&self, a: Subset, b: Subset) -> Subset {
        let mut out = self.elements.empty();
        for g in a.iter() {
            for h in b.iter() {
                if let Some(gh) = self.prod(g, h) {
                    out.insert(gh);
                }
            }
        }
        out
    }

    pub fn set_inv(&self, a: Subset) -> Subset {
        let mut out = self.elements.empty();
        for g in a.iter() {
            out.insert(self.inv[g]);
        }
        out
    }

    /// Is `B` a bisection: `B⁻¹B ⊆ G⁰` and `BB⁻¹ ⊆ G⁰`?
    pub fn is_bisection(&self, b: Subset) -> bool {
        let units = self.units();
        self.set_mul(self.set_inv(b), b).is_subset_of(units)
            && self.set_mul(b, self.set_inv(b)).is_subset_of(units)
    }

    /// Every non-empty bisection, ascending by mask.
    pub fn nonempty_bisections(&self) -> Result<Vec<Subset>> {
        let n = self.size();
        if n > 20 {
            return Err(Error::TooLarge(format!("bisection scan over {n} > 20 elements")));
        }
        Ok((1u128..(1 << n))
            .map(|m| self.elements.subset_from_mask(m))
            .filter(|b| self.is_bisection(*b))
            .collect())
    }
}

/// A family of bisections covering the groupoid and closed under pointwise
/// products (up to `∅`) and inverses.
#[derive(Clone, Debug)]
pub struct EtaleFamily {
    pub members: Vec<Subset>,
}

/// The étale-family axioms, witnessed.
pub fn etale_family_report(g: &FiniteGroupoid, members: &[Subset]) -> ValidationReport {
    let mut report = ValidationReport::new();

    let non_bisection = members.iter().find(|b| !g.is_bisection(**b));
    match non_bisection {
        None => report.pass("bisections"),
        Some(b) => report.fail(
            "bisections",
            serde_json::json!({ "member": g.elements().format_subset(*b) }),
        ),
    }

    let covered = members.iter().fold(g.elements().empty(), |acc, b| acc.union(*b));
    match covered.complement().iter().next() {
        None => report.pass("cover"),
        Some(x) => report.fail("cover", serde_json::json!({ "element": g.elements().label(x) })),
    }

    let mut closure = None;
    'cl: for a in members {
        if !members.contains(&g.set_inv(*a)) {
            closure = Some((*a, *a));
            break;
        }
        for b in members {
            let ab = g.set_mul(*a, *b);
            if !ab.is_empty() && !members.contains(&ab) {
                closure = Some((*a, *b));
                break 'cl;
            }
        }
    }
    match closure {
        None => report.pass("closed-product-inverse"),
        Some((a, b)) => report.fail(
            "closed-product-inverse",
            serde_json::json!({
                "a": g.elements().format_subset(a),
                "b": g.elements().format_subset(b)
            }),
        ),
    }
    report
}

impl EtaleFamily {
    pub fn new(g: &FiniteGroupoid, members: Vec<Subset>) -> Result<Self> {
        let report = etale_family_report(g, &members);
        if !report.passed() {
            return Err(Error::Precondition(format!(
                "not an étale family: {}",
                report.failures().next().unwrap().name
            )));
        }
        Ok(EtaleFamily { members })
    }
}

/// The tight groupoid of a pseudobasic inverse semigroup together with its
/// étale family `(O_s)_{s ≺ S}` and the underlying data for law checks.
#[derive(Clone, Debug)]
pub struct TightGroupoid {
    pub groupoid: FiniteGroupoid,
    pub family: EtaleFamily,
    /// `O_s` per semigroup element, present exactly when `s ≺ S`.
    pub o_s: Vec<Option<Subset>>,
    /// The groupoid elements as subsets of the semigroup.
    pub tights: Vec<Subset>,
    pub p: PStructure,
}

/// Build the tight groupoid: elements are the non-empty tight subsets of
/// `P = S∖{0}`, inversion is pointwise, the product is the coset product
/// where the unit condition holds. The étale laws `O_s O_{s⁻¹} = O_{ss⁻¹}`,
/// `O_s⁻¹ = O_{s⁻¹}` and `O_s O_t = O_{st}` are verified on the way; their
/// failure signals a defect and comes back as an error.
pub fn tight_groupoid(s: &OrderedInvSemigroup) -> Result<TightGroupoid> {
    let pseudo = s.validate_pseudobasic();
    if !pseudo.passed() {
        return Err(Error::Precondition(format!(
            "tight_groupoid needs a pseudobasic inverse semigroup ({} fails)",
            pseudo.failures().next().unwrap().name
        )));
    }
    let base = s.base();
    let n = base.size();
    let p = s.p_structure()?;
    let tight_enum = enumerate_tight(&p.rel)?;
    let tights: Vec<Subset> =
        tight_enum.sets.iter().map(|t| p.embed(t.members(), n)).collect();
    let k = tights.len();
    let labels: Vec<String> =
        tights.iter().map(|t| base.elements().format_subset(*t)).collect();
    let elements = Carrier::with_cap(labels, k.max(1))?;

    let index_of: BTreeMap<u128, usize> =
        tights.iter().enumerate().map(|(i, t)| (t.mask(), i)).collect();
    let defect = || Error::Precondition("tight groupoid closure failed".into());

    let mut inv = Vec::with_capacity(k);
    for t in &tights {
        let ti = base.set_inv(*t);
        inv.push(*index_of.get(&ti.mask()).ok_or_else(defect)?);
    }

    // tight subsets are cosets (they are round Frink filters), so the
    // partial product is the coset product wherever the unit condition
    // holds
    let cosets: Vec<crate::invsemi::Coset> = tights
        .iter()
        .map(|t| crate::invsemi::Coset::new(base, *t))
        .collect::<Result<_>>()
        .map_err(|_| defect())?;
    let mut product = vec![None; k * k];
    for (i, c) in cosets.iter().enumerate() {
        for (j, d) in cosets.iter().enumerate() {
            if let Some(cd) = crate::invsemi::coset_product(base, c, d) {
                product[i * k + j] =
                    Some(*index_of.get(&cd.members().mask()).ok_or_else(defect)?);
            }
        }
    }
    let groupoid = FiniteGroupoid::new(elements, inv, product)
        .map_err(|e| Error::Precondition(format!("tight groupoid is not a groupoid: {e}")))?;

    // the étale family (O_s) for s ≺ S
    let mut o_s: Vec<Option<Subset>> = vec![None; n];
    for elem in 0..n {
        if !s.prec_something(elem) {
            continue;
        }
        let mut o = Subset::empty(k);
        for (i, t) in tights.iter().enumerate() {
            if t.contains(elem) {
                o.insert(i);
            }
        }
        o_s[elem] = Some(o);
    }

    // étale laws
    for elem in 0..n {
        let Some(o) = o_s[elem] else { continue };
        let o_inv_elem = o_s[base.inv(elem)].ok_or_else(defect)?;
        if groupoid.set_inv(o) != o_inv_elem {
            return Err(defect());
        }
        let ss = base.mul(elem, base.inv(elem));
        if groupoid.set_mul(o, groupoid.set_inv(o)) != o_s[ss].ok_or_else(defect)? {
            return Err(defect());
        }
        for other in 0..n {
            let Some(o2) = o_s[other] else { continue };
            let st = base.mul(elem, other);
            if groupoid.set_mul(o, o2) != o_s[st].ok_or_else(defect)? {
                return Err(defect());
            }
        }
    }

    let mut members: Vec<Subset> = o_s.iter().flatten().copied().collect();
    members.sort_by_key(|m| m.mask());
    members.dedup();
    let family = EtaleFamily::new(&groupoid, members)?;

    Ok(TightGroupoid { groupoid, family, o_s, tights, p })
}

/// The inverse semigroup of an étale pseudobasis of bisections, with `∅`
/// adjoined as zero and `≺` the compact containment of the discrete space
/// on the groupoid elements (which is inclusion there).
pub fn bisection_semigroup(
    g: &FiniteGroupoid,
    members: &[Subset],
) -> Result<OrderedInvSemigroup> {
    if members.iter().any(|m| m.is_empty()) {
        return Err(Error::Precondition("bisection_semigroup needs ∅ ∉ members".into()));
    }
    for (i, a) in members.iter().enumerate() {
        if members[i + 1..].contains(a) {
            return Err(Error::Precondition("bisection_semigroup needs distinct members".into()));
        }
    }
    let etale = etale_family_report(g, members);
    if !etale.passed() {
        return Err(Error::Precondition(format!(
            "members are not an étale family: {}",
            etale.failures().next().unwrap().name
        )));
    }
    let space = fintop::FiniteSpace::discrete(g.elements().clone())?;
    let basis = fintop::is_pseudobasis(&space, members)?;
    if !basis.passed() {
        return Err(Error::Precondition(format!(
            "members are not a pseudobasis: {}",
            basis.failures().next().unwrap().name
        )));
    }

    let mut sets: Vec<Subset> = members.to_vec();
    sets.push(g.elements().empty());
    sets.sort_by_key(|m| m.mask());
    let labels: Vec<String> = sets
        .iter()
        .map(|m| if m.is_empty() { "0".to_string() } else { g.elements().format_subset(*m) })
        .collect();
    let carrier = Carrier::with_cap(labels, sets.len().max(1))?;
    let index_of: BTreeMap<u128, usize> =
        sets.iter().enumerate().map(|(i, m)| (m.mask(), i)).collect();
    let k = sets.len();
    let mut table = vec![0usize; k * k];
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate() {
            let ab = g.set_mul(*a, *b);
            let idx = index_of.get(&ab.mask()).ok_or_else(|| {
                Error::Precondition("étale closure failed: product escapes the family".into())
            })?;
            table[i * k + j] = *idx;
        }
    }
    let zero = index_of[&0];
    let base = InvSemigroup::new(carrier.clone(), table, Some(zero))
        .map_err(|e| Error::Precondition(format!("bisection family is not an inverse semigroup: {e}")))?;

    let mut edges = Vec::new();
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate() {
            // ≺ = ⋐ = ⊆ on the discrete space
            if fintop::way_below(&space, *a, *b)? {
                edges.push((i, j));
            }
        }
    }
    let prec = RelStructure::new(carrier, &edges)?;
    let ordered = OrderedInvSemigroup::new(base, Some(prec))?;
    let report = ordered.validate_pseudobasic();
    if !report.passed() {
        return Err(Error::Precondition(format!(
            "bisection semigroup is not pseudobasic: {}",
            report.failures().next().unwrap().name
        )));
    }
    Ok(ordered)
}

/// Verify that `x ↦ T_x = {O ∈ members : x ∈ O}` is a groupoid isomorphism
/// onto the tight groupoid of the bisection semigroup.
pub fn recover_groupoid(g: &FiniteGroupoid, members: &[Subset]) -> Result<ValidationReport> {
    let semigroup = bisection_semigroup(g, members)?;
    let tg = tight_groupoid(&semigroup)?;
    let mut report = ValidationReport::new();

    // members sorted by mask = non-zero semigroup elements in order
    let mut sorted: Vec<Subset> = members.to_vec();
    sorted.sort_by_key(|m| m.mask());

    let index_of_tight: BTreeMap<u128, usize> =
        tg.tights.iter().enumerate().map(|(i, t)| (t.mask(), i)).collect();
    let s_size = semigroup.base().size();
    let zero = semigroup.base().zero().expect("pseudobasic");

    let mut images = Vec::with_capacity(g.size());
    for x in 0..g.size() {
        let mut tx = Subset::empty(s_size);
        for (i, m) in sorted.iter().enumerate() {
            if m.contains(x) {
                // semigroup index: sorted position, shifted past the zero
                let sidx = if i >= zero { i + 1 } else { i };
                tx.insert(sidx);
            }
        }
        images.push(index_of_tight.get(&tx.mask()).copied());
    }
    let total = images.iter().all(Option::is_some);
    report.push("points-map-to-tight-cosets", total, Some(serde_json::json!("T_x is tight")));
    if !total {
        return Ok(report);
    }
    let images: Vec<usize> = images.into_iter().flatten().collect();

    let mut seen = vec![false; tg.groupoid.size()];
    let mut injective = true;
    for &i in &images {
        if seen[i] {
            injective = false;
        }
        seen[i] = true;
    }
    report.push("injective", injective, Some(serde_json::json!("x ↦ T_x")));
    report.push("surjective", seen.iter().all(|b| *b), Some(serde_json::json!("x ↦ T_x")));
    report.push(
        "isomorphism",
        is_isomorphism(g, &tg.groupoid, &images),
        Some(serde_json::json!("inverse, composability and products transport")),
    );
    Ok(report)
}

/// Is `map` a groupoid isomorphism `g1 → g2`?
pub fn is_isomorphism(g1: &FiniteGroupoid, g2: &FiniteGroupoid, map: &[usize]) -> bool {
    let n = g1.size();
    if map.len() != n || g2.size() != n || map.iter().any(|&x| x >= n) {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in map {
        if seen[x] {
            return false;
        }
        seen[x] = true;
    }
    for g in 0..n {
        if map[g1.inv(g)] != g2.inv(map[g]) {
            return false;
        }
        for h in 0..n {
            match (g1.prod(g, h), g2.prod(map[g], map[h])) {
                (None, None) => {}
                (Some(gh), Some(img)) if map[gh] == img => {}
                _ => return false,
            }
        }
    }
    true
}

/// Search for an isomorphism by backtracking, matching unit-space images
/// first.
pub fn find_isomorphism(g1: &FiniteGroupoid, g2: &FiniteGroupoid) -> Option<Vec<usize>> {
    let n = g1.size();
    if g2.size() != n {
        return None;
    }
    let units1 = g1.units();
    let units2 = g2.units();
    if units1.len() != units2.len() {
        return None;
    }
    // units first, then the rest
    let mut order: Vec<usize> = units1.iter().collect();
    order.extend((0..n).filter(|&g| !units1.contains(g)));

    fn consistent(
        g1: &FiniteGroupoid,
        g2: &FiniteGroupoid,
        map: &[Option<usize>],
        g: usize,
        img: usize,
    ) -> bool {
        if let Some(inv_img) = map[g1.inv(g)] {
            if g2.inv(img) != inv_img {
                return false;
            }
        }
        for h in 0..g1.size() {
            let Some(h_img) = map[h] else { continue };
            for (a, b, ai, bi) in [(g, h, img, h_img), (h, g, h_img, img)] {
                match (g1.prod(a, b), g2.prod(ai, bi)) {
                    (None, None) => {}
                    (Some(ab), Some(ab_img)) => {
                        if let Some(known) = map[ab] {
                            if known != ab_img {
                                return false;
                            }
                        }
                    }
                    _ => return false,
                }
            }
        }
        true
    }

    fn search(
        g1: &FiniteGroupoid,
        g2: &FiniteGroupoid,
        order: &[usize],
        pos: usize,
        map: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        units2: Subset,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let g = order[pos];
        let g_is_unit = g1.units().contains(g);
        for img in 0..g2.size() {
            if used[img] || units2.contains(img) != g_is_unit {
                continue;
            }
            if !consistent(g1, g2, map, g, img) {
                continue;
            }
            map[g] = Some(img);
            used[img] = true;
            if search(g1, g2, order, pos + 1, map, used, units2) {
                return true;
            }
            map[g] = None;
            used[img] = false;
        }
        false
    }

    let mut map = vec![None; n];
    let mut used = vec![false; n];
    if search(g1, g2, &order, 0, &mut map, &mut used, units2) {
        let out: Vec<usize> = map.into_iter().map(Option::unwrap).collect();
        debug_assert!(is_isomorphism(g1, g2, &out));
        Some(out)
    } else {
        None
    }
}

/// Graphviz export: units as boxes, non-units as labelled edges from their
/// source unit to their range unit.
pub fn groupoid_dot(g: &FiniteGroupoid) -> String {
    let mut out = String::from("digraph groupoid {\n");
    for u in g.units().iter() {
        out.push_str(&format!("  \"{}\" [shape=box];\n", g.elements().label(u)));
    }
    for x in 0..g.size() {
        if g.units().contains(x) {
            continue;
        }
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
            g.elements().label(g.source(x)),
            g.elements().label(g.range(x)),
            g.elements().label(x)
        ));
    }
    out.push_str("}\n");
    out
}

/// On-disk groupoid format: element labels, an inverse map (identity when
/// omitted for an element) and the defined products as label triples.
#[derive(Debug, Serialize, Deserialize)]
pub struct GroupoidFile {
    pub elements: Vec<String>,
    pub inverse: BTreeMap<String, String>,
    pub product: Vec<(String, String, String)>,
}

impl GroupoidFile {
    pub fn from_groupoid(g: &FiniteGroupoid) -> Self {
        let c = g.elements();
        let mut product = Vec::new();
        for a in 0..g.size() {
            for b in 0..g.size() {
                if let Some(ab) = g.prod(a, b) {
                    product.push((
                        c.label(a).to_string(),
                        c.label(b).to_string(),
                        c.label(ab).to_string(),
                    ));
                }
            }
        }
        GroupoidFile {
            elements: c.labels().to_vec(),
            inverse: (0..g.size())
                .map(|x| (c.label(x).to_string(), c.label(g.inv(x)).to_string()))
                .collect(),
            product,
        }
    }
}

/// Parse a groupoid file; the validation report is returned alongside and
/// the groupoid only when it passed.
pub fn parse_groupoid_report(
    text: &str,
    cap: usize,
) -> Result<(Option<FiniteGroupoid>, ValidationReport)> {
    let file: GroupoidFile = serde_json::from_str(text)?;
    let elements = Carrier::with_cap(file.elements.clone(), cap)?;
    let n = elements.size();
    let mut inv: Vec<usize> = (0..n).collect();
    for (a, b) in &file.inverse {
        let ai = elements.index_of(a).ok_or_else(|| Error::UnknownLabel(a.clone()))?;
        let bi = elements.index_of(b).ok_or_else(|| Error::UnknownLabel(b.clone()))?;
        inv[ai] = bi;
    }
    let mut product = vec![None; n * n];
    for (a, b, ab) in &file.product {
        let ai = elements.index_of(a).ok_or_else(|| Error::UnknownLabel(a.clone()))?;
        let bi = elements.index_of(b).ok_or_else(|| Error::UnknownLabel(b.clone()))?;
        let ci = elements.index_of(ab).ok_or_else(|| Error::UnknownLabel(ab.clone()))?;
        product[ai * n + bi] = Some(ci);
    }
    let report = validate_groupoid(&elements, &inv, &product);
    if !report.passed() {
        return Ok((None, report));
    }
    Ok((Some(FiniteGroupoid::new(elements, inv, product)?), report))
}

pub fn parse_groupoid(text: &str, cap: usize) -> Result<FiniteGroupoid> {
    match parse_groupoid_report(text, cap)? {
        (Some(g), _) => Ok(g),
        (None, report) => Err(Error::Schema(format!(
            "not a groupoid: {}",
            report.failures().next().unwrap().name
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::invsemi;

    fn sub(g: &FiniteGroupoid, labels: &[&str]) -> Subset {
        g.elements().subset_from_labels(labels.iter().copied()).unwrap()
    }

    #[test]
    fn pair_groupoid_is_valid() {
        let g = fixtures::pair_groupoid(2);
        assert_eq!(g.size(), 4);
        assert_eq!(g.units().len(), 2);
        // each singleton is a bisection
        for x in 0..g.size() {
            assert!(g.is_bisection(g.elements().singleton(x)));
        }
        assert!(g.is_bisection(g.elements().empty()));
    }

    #[test]
    fn bisection_counterexample() {
        let g = fixtures::pair_groupoid(2);
        let b = sub(&g, &["1:1", "1:2"]);
        assert!(!g.is_bisection(b));
        // B⁻¹B is the whole groupoid here
        assert_eq!(g.set_mul(g.set_inv(b), b), g.elements().full());
    }

    #[test]
    fn nonempty_bisections_of_pair_groupoid() {
        let g = fixtures::pair_groupoid(2);
        let bis = g.nonempty_bisections().unwrap();
        // four singletons, the unit space and the swap
        assert_eq!(bis.len(), 6);
    }

    #[test]
    fn tight_groupoid_of_e5_is_two_point_unit_groupoid() {
        let s = OrderedInvSemigroup::new(invsemi::e5(), None).unwrap();
        let tg = tight_groupoid(&s).unwrap();
        assert_eq!(tg.groupoid.size(), 2);
        assert_eq!(tg.groupoid.units().len(), 2);
        assert!(is_isomorphism(&tg.groupoid, &fixtures::unit_groupoid(2), &[0, 1]));
    }

    #[test]
    fn tight_groupoid_of_i2_is_pair_groupoid() {
        let s =
            OrderedInvSemigroup::new(invsemi::symmetric_inverse_monoid(2).unwrap(), None).unwrap();
        let tg = tight_groupoid(&s).unwrap();
        assert_eq!(tg.groupoid.size(), 4);
        assert_eq!(tg.groupoid.units().len(), 2);
        let map = find_isomorphism(&tg.groupoid, &fixtures::pair_groupoid(2)).unwrap();
        assert!(is_isomorphism(&tg.groupoid, &fixtures::pair_groupoid(2), &map));
    }

    #[test]
    fn tight_groupoid_of_one_atom_semilattice() {
        let base = invsemi::meet_semilattice(1, &[1]).unwrap();
        let s = OrderedInvSemigroup::new(base, None).unwrap();
        let tg = tight_groupoid(&s).unwrap();
        assert_eq!(tg.groupoid.size(), 1);
        assert_eq!(tg.groupoid.units().len(), 1);
    }

    #[test]
    fn tight_groupoid_of_boolean_semilattices_is_unit_groupoid_on_atoms() {
        for n in 1..=3usize {
            let s =
                OrderedInvSemigroup::new(invsemi::boolean_semilattice(n).unwrap(), None).unwrap();
            let tg = tight_groupoid(&s).unwrap();
            assert_eq!(tg.groupoid.size(), n);
            assert_eq!(tg.groupoid.units().len(), n);
        }
    }

    #[test]
    fn bisection_semigroup_examples() {
        let g = fixtures::pair_groupoid(2);
        let singletons: Vec<Subset> = (0..4).map(|i| g.elements().singleton(i)).collect();
        let s = bisection_semigroup(&g, &singletons).unwrap();
        assert_eq!(s.base().size(), 5);

        let unit = fixtures::unit_groupoid(1);
        let s = bisection_semigroup(&unit, &[unit.elements().full()]).unwrap();
        assert_eq!(s.base().size(), 2);
        assert_eq!(s.base().idempotents(), s.base().elements().full());

        // all non-empty bisections give a semigroup isomorphic to I_2,
        // found by table comparison
        let all = g.nonempty_bisections().unwrap();
        let s = bisection_semigroup(&g, &all).unwrap();
        assert_eq!(s.base().size(), 7);
        let i2 = invsemi::symmetric_inverse_monoid(2).unwrap();
        assert!(semigroup_isomorphic(s.base(), &i2));
    }

    /// Backtracking table comparison for small inverse semigroups.
    fn semigroup_isomorphic(a: &invsemi::InvSemigroup, b: &invsemi::InvSemigroup) -> bool {
        let n = a.size();
        if b.size() != n {
            return false;
        }
        fn extend(
            a: &invsemi::InvSemigroup,
            b: &invsemi::InvSemigroup,
            map: &mut Vec<Option<usize>>,
            used: &mut Vec<bool>,
            x: usize,
        ) -> bool {
            let n = a.size();
            if x == n {
                return (0..n).all(|p| {
                    (0..n).all(|q| map[a.mul(p, q)].unwrap() == b.mul(map[p].unwrap(), map[q].unwrap()))
                });
            }
            for img in 0..n {
                if used[img] {
                    continue;
                }
                let consistent = (0..x).all(|p| {
                    map[a.mul(p, x)].map_or(true, |pq| pq == b.mul(map[p].unwrap(), img))
                        && map[a.mul(x, p)].map_or(true, |qp| qp == b.mul(img, map[p].unwrap()))
                });
                if !consistent {
                    continue;
                }
                map[x] = Some(img);
                used[img] = true;
                if extend(a, b, map, used, x + 1) {
                    return true;
                }
                map[x] = None;
                used[img] = false;
            }
            false
        }
        extend(a, b, &mut vec![None; n], &mut vec![false; n], 0)
    }

    #[test]
    fn recover_groupoid_examples() {
        let g = fixtures::pair_groupoid(2);
        let singletons: Vec<Subset> = (0..4).map(|i| g.elements().singleton(i)).collect();
        let report = recover_groupoid(&g, &singletons).unwrap();
        assert!(report.passed(), "{}", report.render_text());

        let unit3 = fixtures::unit_groupoid(3);
        let singles: Vec<Subset> = (0..3).map(|i| unit3.elements().singleton(i)).collect();
        assert!(recover_groupoid(&unit3, &singles).unwrap().passed());

        let all = g.nonempty_bisections().unwrap();
        let report = recover_groupoid(&g, &all).unwrap();
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn iso_check_examples() {
        let g = fixtures::pair_groupoid(2);
        let id: Vec<usize> = (0..4).collect();
        assert!(is_isomorphism(&g, &g, &id));

        // swapping the two base points is a symmetry
        let relabel = find_isomorphism(&g, &g).unwrap();
        assert!(is_isomorphism(&g, &g, &relabel));

        // collapsing two units is not injective
        let unit2 = fixtures::unit_groupoid(2);
        assert!(!is_isomorphism(&unit2, &unit2, &[0, 0]));
    }

    #[test]
    fn dot_export_shape() {
        let g = fixtures::pair_groupoid(2);
        let dot = groupoid_dot(&g);
        assert_eq!(dot.matches("shape=box").count(), 2);
        assert_eq!(dot.matches(" -> ").count(), 2);
    }

    #[test]
    fn groupoid_json_round_trip() {
        let g = fixtures::pair_groupoid(2);
        let text = serde_json::to_string(&GroupoidFile::from_groupoid(&g)).unwrap();
        let (parsed, report) = parse_groupoid_report(&text, 64).unwrap();
        assert!(report.passed());
        assert_eq!(parsed.unwrap(), g);
    }
}
