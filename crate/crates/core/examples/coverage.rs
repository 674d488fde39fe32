use primepart::partition::{contradiction_chain, is_prime_partitionable, solve_with_stats};

fn main() {
    let limit: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(200);
    let (mut chained, mut unchained) = (0, Vec::new());
    for n in 4..=limit {
        if is_prime_partitionable(n) {
            continue;
        }
        match contradiction_chain(n).unwrap() {
            Some(_) => chained += 1,
            None => unchained.push(n),
        }
    }
    println!("refuted by propagation: {chained}; needs search: {unchained:?}");
    for n in [100u64, 196, 300, 500, 1000] {
        let t = std::time::Instant::now();
        let (p, s) = solve_with_stats(n).unwrap();
        println!("{n}: {} {:?} {:?}", p.is_some(), s, t.elapsed());
    }
}
