//! Corpus construction and the battery runner. A failure is a hard error
//! carrying the witness and the offending instance in its module JSON
//! format; failures reproduce from `(seed, check-name)` alone.

use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use tightspec::fixtures;
use tightspec::invsemi::{self, OrderedInvSemigroup};

use crate::checks::{all_checks, Check};
use crate::gen::{gen_instance, Instance, InstanceGenSpec, InstanceKind};
use crate::rng::XorShift64Star;

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub instance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub witness: Value,
    pub instance_dump: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckTally {
    pub name: String,
    pub instances: usize,
    pub passes: usize,
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BatteryReport {
    pub instances_run: usize,
    pub checks: Vec<CheckTally>,
    pub wall_clock_ms: u128,
}

impl BatteryReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failures.is_empty())
    }

    pub fn total_failures(&self) -> usize {
        self.checks.iter().map(|c| c.failures.len()).sum()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<28} {:>9} {:>9} {:>9}\n",
            "check", "instances", "passes", "failures"
        ));
        for c in &self.checks {
            out.push_str(&format!(
                "{:<28} {:>9} {:>9} {:>9}\n",
                c.name,
                c.instances,
                c.passes,
                c.failures.len()
            ));
            for f in &c.failures {
                out.push_str(&format!("    FAIL {} witness={}\n", f.instance, f.witness));
            }
        }
        out.push_str(&format!(
            "instances: {}   wall-clock: {} ms   verdict: {}\n",
            self.instances_run,
            self.wall_clock_ms,
            if self.passed() { "PASS" } else { "FAIL" }
        ));
        out
    }
}

/// The canonical fixture corpus: E1–E4 and the small Boolean algebras as
/// relations, E5 (both orders) and I_2 as semigroups, and the discrete
/// spaces with their singleton pseudobases.
pub fn fixture_instances() -> Vec<(String, Instance)> {
    let mut out: Vec<(String, Instance)> = vec![
        ("E1".into(), Instance::Rel(fixtures::e1())),
        ("E2".into(), Instance::Rel(fixtures::e2())),
        ("E3".into(), Instance::Rel(fixtures::e3())),
        ("E4".into(), Instance::Rel(fixtures::e4())),
        ("B2".into(), Instance::Rel(fixtures::boolean_algebra_rel(2))),
        ("B3".into(), Instance::Rel(fixtures::boolean_algebra_rel(3))),
        (
            "E5".into(),
            Instance::Semigroup(OrderedInvSemigroup::new(invsemi::e5(), None).unwrap()),
        ),
        ("E5-strict".into(), Instance::Semigroup(invsemi::e5_strict())),
        (
            "I2".into(),
            Instance::Semigroup(
                OrderedInvSemigroup::new(invsemi::symmetric_inverse_monoid(2).unwrap(), None)
                    .unwrap(),
            ),
        ),
    ];
    for k in 1..=3 {
        let space = fixtures::discrete_space(k);
        let members = fixtures::singletons(&space);
        out.push((format!("discrete-{k}"), Instance::Space { space, members }));
    }
    out
}

pub struct BatteryOptions {
    pub seed: u64,
    pub count: usize,
    pub max_size: usize,
    /// Restrict to these check names (all when empty).
    pub only: Vec<String>,
    /// Cycle through these generator kinds (all when empty).
    pub kinds: Vec<InstanceKind>,
    pub fixtures: bool,
}

impl Default for BatteryOptions {
    fn default() -> Self {
        BatteryOptions { seed: 1, count: 100, max_size: 6, only: vec![], kinds: vec![], fixtures: true }
    }
}

/// Derive the generation specs for a battery run: instance `i` uses seed
/// `base + i` and cycles through the generator kinds.
pub fn corpus_specs(opts: &BatteryOptions) -> Vec<InstanceGenSpec> {
    let kinds: &[InstanceKind] =
        if opts.kinds.is_empty() { &InstanceKind::ALL } else { &opts.kinds };
    (0..opts.count)
        .map(|i| InstanceGenSpec {
            seed: opts.seed.wrapping_add(i as u64),
            max_size: opts.max_size,
            kind: kinds[i % kinds.len()],
        })
        .collect()
}

pub fn run_battery(opts: &BatteryOptions) -> BatteryReport {
    let specs = corpus_specs(opts);
    let started = Instant::now();
    let checks: Vec<Check> = all_checks()
        .into_iter()
        .filter(|c| opts.only.is_empty() || opts.only.iter().any(|n| n == c.name))
        .collect();

    let mut tallies: Vec<CheckTally> = checks
        .iter()
        .map(|c| CheckTally { name: c.name.into(), instances: 0, passes: 0, failures: vec![] })
        .collect();

    let mut corpus: Vec<(String, Option<u64>, Instance)> = Vec::new();
    if opts.fixtures {
        for (name, inst) in fixture_instances() {
            corpus.push((name, None, inst));
        }
    }
    for spec in &specs {
        match gen_instance(spec) {
            Ok(inst) => corpus.push((
                format!("{}#{}", spec.kind.name(), spec.seed),
                Some(spec.seed),
                inst,
            )),
            Err(e) => {
                // a generator refusing a spec is a configuration error, not
                // a proposition failure; surface it on every check
                for tally in &mut tallies {
                    tally.failures.push(Failure {
                        instance: format!("{}#{}", spec.kind.name(), spec.seed),
                        seed: Some(spec.seed),
                        witness: serde_json::json!({ "generator": e.to_string() }),
                        instance_dump: Value::Null,
                    });
                }
            }
        }
    }

    let instances_run = corpus.len();
    for (name, seed, instance) in &corpus {
        for (check, tally) in checks.iter().zip(tallies.iter_mut()) {
            if !check.applies_to(instance) {
                continue;
            }
            tally.instances += 1;
            let mut rng = XorShift64Star::new(seed.unwrap_or(0)).child(check.name);
            match (check.run)(instance, &mut rng) {
                Ok(()) => tally.passes += 1,
                Err(witness) => tally.failures.push(Failure {
                    instance: name.clone(),
                    seed: *seed,
                    witness,
                    instance_dump: instance.dump(),
                }),
            }
        }
    }

    BatteryReport {
        instances_run,
        checks: tallies,
        wall_clock_ms: started.elapsed().as_millis(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_pass_every_check() {
        let opts = BatteryOptions { count: 0, ..Default::default() };
        let report = run_battery(&opts);
        assert!(report.passed(), "{}", report.render_text());
        assert_eq!(report.instances_run, fixture_instances().len());
    }

    #[test]
    fn empty_spec_list_gives_empty_report() {
        let opts = BatteryOptions { count: 0, fixtures: false, ..Default::default() };
        let report = run_battery(&opts);
        assert_eq!(report.instances_run, 0);
        assert!(report.passed());
        assert!(report.checks.iter().all(|c| c.instances == 0));
    }

    #[test]
    fn small_seeded_run_passes() {
        let opts = BatteryOptions { seed: 10, count: 15, max_size: 5, ..Default::default() };
        let report = run_battery(&opts);
        assert!(report.passed(), "{}", report.render_text());
    }
}
