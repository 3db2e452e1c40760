//! Brute-force oracles: the cover calculus written straight from the
//! defining quantifiers, with explicit loops and explicit existentials
//! over finite interpolants.
//!
//! Nothing here touches the reduced fast paths in the library; the only
//! shared vocabulary is the relation matrix itself. The battery checks the
//! reduced implementations against these on every corpus instance.

use tightspec::carrier::{all_subsets, Subset};
use tightspec::rel::{CoverKind, RelStructure};

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

pub fn subset_prec(rel: &RelStructure, q: Subset, r: Subset) -> bool {
    q.iter().all(|x| r.iter().any(|y| rel.prec(x, y)))
}

/// `Q D R ⇔ ∀q ≺ Q ∃r ≺ R (r ≺ q)`.
pub fn dense(rel: &RelStructure, q: Subset, r: Subset) -> bool {
    let dq = down_image(rel, q);
    let dr = down_image(rel, r);
    dq.iter().all(|x| dr.iter().any(|y| rel.prec(y, x)))
}

/// `Q C R ⇔ ∃ finite F (Q D F ≺ R)`, quantifying every subset as `F`.
pub fn compact(rel: &RelStructure, q: Subset, r: Subset) -> bool {
    all_subsets(rel.size()).any(|f| subset_prec(rel, f, r) && dense(rel, q, f))
}

pub fn disjoint(rel: &RelStructure, q: Subset, r: Subset) -> bool {
    !down_image(rel, q).intersects(down_image(rel, r))
}

pub fn meet(rel: &RelStructure, f: Subset) -> Subset {
    let n = rel.size();
    let mut out = Subset::full(n);
    for x in f.iter() {
        let mut below = Subset::empty(n);
        for p in 0..n {
            if rel.prec(p, x) {
                below.insert(p);
            }
        }
        out = out.intersect(below);
    }
    out
}

/// Centred: every finite subset has a non-empty formal meet.
pub fn centred(rel: &RelStructure, q: Subset) -> bool {
    q.subsets().all(|f| !meet(rel, f).is_empty())
}

/// `Q ⊏̂ R` quantifying every finite `F ⊆ Q`.
pub fn meet_cover(rel: &RelStructure, kind: CoverKind, q: Subset, r: Subset) -> bool {
    q.subsets().any(|f| {
        let m = meet(rel, f);
        match kind {
            CoverKind::Prec => subset_prec(rel, m, r),
            CoverKind::Dense => dense(rel, m, r),
            CoverKind::Compact => compact(rel, m, r),
            CoverKind::Disjoint => disjoint(rel, m, r),
        }
    })
}

pub fn round(rel: &RelStructure, r: Subset) -> bool {
    r.iter().all(|x| r.iter().any(|y| rel.prec(y, x)))
}

/// Tight, by definition: round and not meet-covered by the complement.
pub fn tight(rel: &RelStructure, t: Subset) -> bool {
    round(rel, t) && !meet_cover(rel, CoverKind::Compact, t, t.complement())
}

/// Frink filter, quantifying the finite subset in the meet condition.
pub fn frink(rel: &RelStructure, u: Subset) -> bool {
    let n = rel.size();
    (0..n).all(|elem| {
        let witnessed = (0..n).any(|w| {
            rel.prec(w, elem)
                && u.subsets().any(|f| meet(rel, f).iter().all(|m| rel.prec(m, w)))
        });
        witnessed == u.contains(elem)
    })
}
