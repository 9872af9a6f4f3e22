//! The M22 items over GF(4). Run with `--release`.

use char2::cli::stretch::{verify_m22, with_budget, DEFAULT_BUDGET};

fn main() {
    match with_budget(DEFAULT_BUDGET, || verify_m22(1)) {
        Some(Ok(r)) => print!("{}", r.to_text()),
        Some(Err(e)) => eprintln!("M22: {e}"),
        None => eprintln!("M22: budget exhausted"),
    }
}
