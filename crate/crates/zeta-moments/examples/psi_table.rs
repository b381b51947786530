//! Build a ψ table with the segmented sieve, query it, and round-trip the
//! binary cache.
//!
//! ```text
//! cargo run --release --example psi_table
//! ```

use zeta_moments::psi::{build_psi_table, von_mangoldt, PsiTable};

fn main() -> zeta_moments::Result<()> {
    let limit = 1_000_000;
    let t0 = std::time::Instant::now();
    let table = build_psi_table(limit)?;
    println!(
        "sieved to {limit} in {:.2?}: {} prime-power breakpoints",
        t0.elapsed(),
        table.breakpoints().len()
    );

    for x in [10.0, 100.0, 1e3, 1e5, 1e6] {
        let psi = table.psi(x)?;
        println!("psi({x:>9}) = {psi:>16.6}   psi(x)/x = {:.6}", psi / x);
    }

    println!(
        "prime powers in (89, 96] (none): {:?}",
        table.breakpoints_in(89.0, 96.0)?
    );
    println!(
        "prime powers in (1, 10]: {:?}",
        table.breakpoints_in(1.0, 10.0)?
    );
    println!("lambda(8) = {} = log 2 = {}", table.lambda(8), von_mangoldt(8));

    let cache = std::env::temp_dir().join("psi_example.bin");
    table.write_cache(&cache)?;
    let reloaded = PsiTable::read_cache(&cache)?;
    println!(
        "cache round-trip: psi({limit}) identical = {}",
        reloaded.psi_at(limit).to_bits() == table.psi_at(limit).to_bits()
    );
    std::fs::remove_file(&cache).ok();
    Ok(())
}
