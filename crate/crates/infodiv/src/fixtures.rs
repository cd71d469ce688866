//! Bundled data files: the four knowledge-estimation scenarios and the
//! measure-comparison score table. The same JSON files ship in the crate's
//! `fixtures/` directory for use from the command line.

pub const SCENARIO_1: &str = include_str!("../fixtures/scenario1.json");
pub const SCENARIO_2: &str = include_str!("../fixtures/scenario2.json");
pub const SCENARIO_3: &str = include_str!("../fixtures/scenario3.json");
pub const SCENARIO_4: &str = include_str!("../fixtures/scenario4.json");
pub const MCDA_TABLE_3: &str = include_str!("../fixtures/mcda_table3.json");

/// All bundled scenarios as `(file stem, JSON text)` pairs.
pub const SCENARIOS: [(&str, &str); 4] = [
    ("scenario1", SCENARIO_1),
    ("scenario2", SCENARIO_2),
    ("scenario3", SCENARIO_3),
    ("scenario4", SCENARIO_4),
];
