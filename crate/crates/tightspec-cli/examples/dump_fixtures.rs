use std::fs;
use tightspec::fixtures;
use tightspec::gpd::GroupoidFile;
use tightspec::invsemi::{self, OrderedInvSemigroup, SemigroupFile};
use tightspec::rel::RelationFile;

fn main() {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "fixtures".into());
    for (name, rel) in [
        ("e1", fixtures::e1()),
        ("e2", fixtures::e2()),
        ("e3", fixtures::e3()),
        ("e4", fixtures::e4()),
        ("b3", fixtures::boolean_algebra_rel(3)),
    ] {
        let file = RelationFile::from_rel(&rel);
        fs::write(
            format!("{dir}/{name}.json"),
            serde_json::to_string_pretty(&file).unwrap() + "\n",
        )
        .unwrap();
    }
    for (name, sg) in [
        ("e5", OrderedInvSemigroup::new(invsemi::e5(), None).unwrap()),
        ("i2", OrderedInvSemigroup::new(invsemi::symmetric_inverse_monoid(2).unwrap(), None).unwrap()),
    ] {
        let file = SemigroupFile::from_ordered(&sg);
        fs::write(
            format!("{dir}/{name}.json"),
            serde_json::to_string_pretty(&file).unwrap() + "\n",
        )
        .unwrap();
    }
    let pair = fixtures::pair_groupoid(2);
    fs::write(
        format!("{dir}/pair2.json"),
        serde_json::to_string_pretty(&GroupoidFile::from_groupoid(&pair)).unwrap() + "\n",
    )
    .unwrap();
    fs::write(
        format!("{dir}/sierpinski.json"),
        "{\"points\": [\"p0\", \"p1\"], \"opens\": [[], [1], [0, 1]]}\n",
    )
    .unwrap();
    fs::write(format!("{dir}/garbage.json"), "this is not json {{{\n").unwrap();
    println!("fixtures written to {dir}/");
}
