use ratdyn::cli::parse_map;
use ratdyn::dynamics::{default_horizon, hole_orbit_relations};

fn main() {
    let f = parse_map("(X-Y)^2*Y*(X+Y)*[-X:Y]").unwrap();
    let rel = hole_orbit_relations(&f, default_horizon(f.degree()));
    for r in &rel.relations {
        println!("f_hat^{}({}) = {}", r.time, r.source, r.target);
    }
}
