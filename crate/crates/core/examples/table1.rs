//! Recomputes the five known rows and prints them as JSON.

use std::time::Instant;

use coxeter_tc::polytope::{known_rows, table1_row, StatsOptions};

fn main() {
    for row in known_rows() {
        let start = Instant::now();
        let e = table1_row(&row, &StatsOptions::default()).unwrap();
        println!("{}\n  in {:.2?}", serde_json::to_string(&e).unwrap(), start.elapsed());
    }
}
