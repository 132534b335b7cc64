//! Window scans with a persistent expansion cache: the second run reads the
//! expansions written by the first.

use torusrank::complexity::arithmetic_complexity_cached;
use torusrank::store::ExpansionCache;
use torusrank::{QuadraticIrrational, SearchConfig};

fn main() -> torusrank::Result<()> {
    let path = std::env::temp_dir().join("torusrank-example-cache.jsonl");
    let _ = std::fs::remove_file(&path);
    let theta = QuadraticIrrational::sqrt(11)?;
    let cfg = SearchConfig::default().with_window(200_000);

    for run in 1..=2 {
        let mut cache = ExpansionCache::open(&path)?;
        let report = arithmetic_complexity_cached(&theta, &cfg, &mut cache)?;
        cache.flush()?;
        println!(
            "run {run}: c = {}, {} cached expansions, {} hits, {} misses",
            report.c,
            cache.len(),
            cache.hits(),
            cache.misses()
        );
    }
    std::fs::remove_file(&path)?;
    Ok(())
}
