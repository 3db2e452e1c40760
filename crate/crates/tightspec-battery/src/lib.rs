//! Seeded instance generation, brute-force oracles for every reduced
//! quantifier in `tightspec`, and the proposition-by-proposition
//! verification battery.
//!
//! The pseudorandom stream is a fixed xorshift64* (shifts 12/25/27,
//! multiplier `0x2545F4914F6CDD1D`), so identical specs generate identical
//! corpora on every platform. Check failures carry the offending instance
//! in its module JSON format and reproduce from `(seed, check-name)`.

pub mod battery;
pub mod checks;
pub mod gen;
pub mod oracle;
pub mod rng;

pub use battery::{fixture_instances, run_battery, BatteryOptions, BatteryReport};
pub use gen::{gen_instance, Instance, InstanceGenSpec, InstanceKind};
pub use rng::XorShift64Star;
