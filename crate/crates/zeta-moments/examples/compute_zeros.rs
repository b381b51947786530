//! Locate zeta-zero ordinates with certified completeness and export them
//! in the plain-text table format.
//!
//! ```text
//! cargo run --release --example compute_zeros
//! ```

use zeta_moments::zeros::{theta_zero_count, zeta, ZeroList};

fn main() -> zeta_moments::Result<()> {
    let t0 = std::time::Instant::now();
    let list = ZeroList::compute(500.0)?;
    println!(
        "found {} ordinates up to 500 in {:.2?} (theta winding: {:.3})",
        list.len(),
        t0.elapsed(),
        zeta::theta_count_main_term(500.0)
    );
    println!("first five:");
    for g in &list.ordinates()[..5] {
        println!("  {g:.9}");
    }
    println!("count below 100 = {} (N(100) = {})", list.count_below(100.0), theta_zero_count(100.0));

    let path = std::env::temp_dir().join("zeros_500.txt");
    list.export(&path)?;
    let back = ZeroList::import(&path)?;
    println!(
        "export/import round-trip: {} ordinates, t_max {}",
        back.len(),
        back.t_max()
    );
    std::fs::remove_file(&path).ok();
    Ok(())
}
