// Scratch harness: search for immune graphs meeting gadget requirements and
// print frozen edge lists. Not part of the library surface.

use matchcut::graph::Graph;
use matchcut::immunity::{self, ProviderRequest};
use matchcut::matching::has_perfect_matching;
use matchcut::solvers::Budget;

fn dump(name: &str, g: &Graph) {
    println!("--- {name}: n={} m={} girth={:?} profile={:?}", g.n(), g.m(), g.girth(), g.profile());
    let pairs: Vec<String> = g.edges().iter().map(|&(u, v)| format!("({u},{v})")).collect();
    println!("edges: {}", pairs.join(", "));
    if let Some((s, t, d)) = g.farthest_pair() {
        println!("farthest pair: {s} {t} at distance {d}");
    }
    if let Some(m) = has_perfect_matching(g) {
        println!("perfect matching: {:?}", m.edges());
    }
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let which = args.get(1).map(String::as_str).unwrap_or("g4");

    match which {
        "g4" => {
            // Base for girth-4 targets: immune, girth >= 4, perfect matching,
            // a pair of matched-partner vertices at distance >= 3.
            for seed in 0..20u64 {
                let req = ProviderRequest {
                    min_girth: 4,
                    must_be_bipartite: true,
                    needs_perfect_matching: true,
                    designated_distance: 3,
                    max_vertices: 20,
                    seed,
                };
                let t0 = std::time::Instant::now();
                if let Some(supply) = immunity::find_immune(&req) {
                    println!("seed {seed} took {:?}", t0.elapsed());
                    dump("g4 base", &supply.graph);
                    return;
                }
                println!("seed {seed} failed ({:?})", t0.elapsed());
            }
        }
        "g5" => {
            for seed in 0..10u64 {
                let req = ProviderRequest {
                    min_girth: 5,
                    must_be_bipartite: false,
                    needs_perfect_matching: true,
                    designated_distance: 4,
                    max_vertices: 60,
                    seed,
                };
                let t0 = std::time::Instant::now();
                if let Some(supply) = immunity::find_immune(&req) {
                    println!("seed {seed} took {:?}", t0.elapsed());
                    dump("g5 base", &supply.graph);
                    return;
                }
                println!("seed {seed} failed ({:?})", t0.elapsed());
            }
        }
        "g5probe" => {
            // How fast is immunity verification on random girth-5 graphs of
            // degree 4 and 5 large enough to hold distance-4 pairs?
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
            for (d, n) in [(4usize, 54usize), (4, 58), (4, 62), (5, 30), (5, 34), (5, 40)] {
                for _ in 0..3 {
                    if let Some(g) = immunity::random_regular_with_girth(n, d, 5, false, &mut rng) {
                        let t0 = std::time::Instant::now();
                        let immune = immunity::is_immune(&g, Budget::new(500_000_000));
                        println!(
                            "d={d} n={n} girth={:?} immune={immune:?} in {:?} farthest={:?}",
                            g.girth(),
                            t0.elapsed(),
                            g.farthest_pair().map(|(_, _, dd)| dd)
                        );
                    } else {
                        println!("d={d} n={n}: generation failed");
                    }
                }
            }
        }
        other => eprintln!("unknown mode {other}"),
    }
}
