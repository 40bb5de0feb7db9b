//! Level sets and the segment tasks they induce.

use parsweep::dichotomy::{build_level_sets, Schedule};

fn main() {
    for p in [1, 6, 15] {
        let sets = build_level_sets(p);
        println!("p = {p}: {:?}", sets.levels());
    }
    let schedule = Schedule::new(&build_level_sets(15));
    for (k, level) in schedule.levels.iter().enumerate() {
        let tasks: Vec<String> = level
            .iter()
            .map(|t| format!("{:?} in ({}, {})", t.members, t.left, t.right))
            .collect();
        println!("level {}: {}", k + 1, tasks.join(", "));
    }
}
