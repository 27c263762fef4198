//! Shared inputs for the benchmarks.

use gvbps_core::gvtransform::{BpsTable, CurveClass, TableMeta};
use gvbps_core::BigInt;

/// A rank-2 BPS table with a small value on every class up to `max_degree`.
pub fn dense_bps(max_degree: u64, max_genus: usize) -> BpsTable {
    let meta = TableMeta::new(vec![1, 1], max_genus, max_degree).expect("positive weights");
    let mut t = BpsTable::new(meta.clone());
    for beta in meta.classes_up_to(max_degree) {
        for h in 0..=max_genus.min(2) {
            let v = (beta.components().iter().sum::<u64>() as i64 + h as i64) % 5 - 2;
            t.insert(
                h,
                CurveClass::new(beta.components().to_vec()),
                BigInt::from(v),
            )
            .expect("inside the window");
        }
    }
    t
}
