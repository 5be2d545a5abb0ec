//! Fits the growth of extremal ratios in `q` and compares each slope with
//! the exponent term its test function is built to force.

use heisenberg_kakeya::harness::{default_plans, sweep_plan, DEFAULT_QS};
use heisenberg_kakeya::Result;
use num_traits::ToPrimitive;

fn main() -> Result<()> {
    for plan in default_plans().into_iter().filter(|p| p.n == 1) {
        let qs = plan.fit_qs(&DEFAULT_QS);
        let res = sweep_plan(&plan, &qs, None)?;
        println!(
            "{:<32} (u, v) = ({}, {}): slope {:.3}, term {} = {:.3}, q in {:?}",
            plan.label(),
            plan.u,
            plan.v,
            res.slope,
            res.term,
            res.term.to_f64().unwrap_or(f64::NAN),
            res.qs
        );
    }
    Ok(())
}
