//! The rate function, its maximum at 3 and the assembled upper bound.

use tilecensus::entropy_bound::{
    best_integer_rate, endpoint_lemma_gap, interpolated_rate, jensen_max_product, log2_cbrt3, total_count_log2,
    BoundParams,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("rate(rho) in bits per cell:");
    for rho in [1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 6.0, 10.0] {
        println!("  rho={rho:<5} {:.6}", interpolated_rate(rho)?);
    }
    let (n, base) = best_integer_rate();
    println!("best integer N={n}, N^(1/N)={base:.10}, log2 = {:.10}", log2_cbrt3());
    println!("jensen: max product of 3 parts summing to 7 = {}", jensen_max_product(3, 7)?);
    for big_n in [1, 2, 3, 10] {
        println!("lemma gap N={big_n}: {:e}", endpoint_lemma_gap(big_n, 10_000)?);
    }

    println!("\nlog2(count bound) / n, d=1, alpha=0.1, k=ceil(sqrt(n)):");
    for e in 3..=9 {
        let n = 10u64.pow(e);
        let p = BoundParams::new(n, 1, 0.1)?;
        match total_count_log2(&p) {
            Ok(bits) => println!("  n=1e{e} k={:<6} {:.6}", p.k, bits / n as f64),
            Err(err) => println!("  n=1e{e} k={:<6} {err}", p.k),
        }
    }
    Ok(())
}
