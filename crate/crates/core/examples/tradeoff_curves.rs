//! Writes the bound, class-A and class-B F(G) curves as CSV to stdout, ready
//! for any plotting tool.
//!
//! cargo run --example tradeoff_curves > curves.csv

use qrepeater::sweep::{tradeoff_csv, tradeoff_rows, TradeoffSpec, DEFAULT_TRADEOFF_NS};

fn main() -> qrepeater::Result<()> {
    let rows = tradeoff_rows(&TradeoffSpec {
        n_list: DEFAULT_TRADEOFF_NS.to_vec(),
        steps: 101,
        output_path: None,
    })?;
    print!("{}", tradeoff_csv(&rows));
    Ok(())
}
