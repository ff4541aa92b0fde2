//! Partial products of `∏_{k≥2} (1 - k^-α)` and certified enclosures of the
//! limit.
//!
//! ```bash
//! cargo run -p relaxed-greedy --example infinite_product
//! ```

use relaxed_greedy::analysis::{partial_product, product_with_tail};
use relaxed_greedy::Result;

fn main() -> Result<()> {
    println!("alpha = 2 telescopes to (N+1)/(2N):");
    for n in [2, 10, 100, 10_000, 1_000_000] {
        let p = partial_product(2.0, n)?;
        let exact = (n as f64 + 1.0) / (2.0 * n as f64);
        println!(
            "  N={n:8}  product={p:.15}  error={:.1e}",
            (p - exact).abs()
        );
    }

    println!("enclosures lower <= P_alpha <= upper:");
    for alpha in [1.1, 1.5, 2.0, 3.0] {
        for n in [100, 10_000, 1_000_000] {
            let e = product_with_tail(alpha, n)?;
            println!(
                "  alpha={alpha:<4} N={n:8}  [{:.10}, {:.10}]  width={:.2e}",
                e.lower,
                e.upper,
                e.width()
            );
        }
    }
    Ok(())
}
