//! Times the two large enumerations of the (2200, 3000) group.

use std::time::Instant;

use coxeter_tc::enumerator::{enumerate_named, EnumerationLimits, Strategy};
use coxeter_tc::presentation::{locally_toroidal_presentation, ToroidalType, FACET, VERTEX};

fn main() {
    let strategy: Strategy = std::env::args().nth(1).as_deref().unwrap_or("hlt-lookahead").parse().unwrap();
    let p = locally_toroidal_presentation(ToroidalType::double(2), Some(ToroidalType::single(3)));
    for sub in [VERTEX, FACET] {
        let start = Instant::now();
        let t = enumerate_named(&p, sub, &EnumerationLimits::new(1 << 26, strategy)).unwrap();
        println!("{sub} {strategy}: index {} max live {} defined {} in {:.2?}", t.index(), t.stats().max_live, t.stats().defined, start.elapsed());
    }
}
