//! A second, deliberately naive decision procedure for the model order.
//!
//! It re-derives `x ≤ y` from the raw rule table: every trace value is
//! computed by an explicit dot product, and the four clauses are evaluated
//! trace by trace with explicit flags. It shares no code with
//! [`WModel::compare`](super::WModel::compare) beyond the data types.

use super::{CuntzClass, WModel};
use crate::scalar::Scalar;

fn trace_value<T: Scalar>(row: &[T], v: &[i64]) -> T {
    let mut acc = T::zero();
    for (r, &c) in row.iter().zip(v) {
        acc = acc + r.clone() * T::from_int(c);
    }
    acc
}

/// Oracle verdict for `x ≤ y`. Classes are assumed valid for `model`.
pub fn oracle_leq<T: Scalar>(model: &WModel<T>, x: &CuntzClass<T>, y: &CuntzClass<T>) -> bool {
    let (k0, n) = match model {
        WModel::PurelyInfinite => {
            // 0 ≤ 0, 0 ≤ <1>, <1> ≤ <1>; only <1> ≤ 0 fails
            let is_unit = |c: &CuntzClass<T>| matches!(c, CuntzClass::Proj(v) if v[0] != 0);
            return !(is_unit(x) && !is_unit(y));
        }
        WModel::Finite { k0, traces } => (k0, traces.len()),
    };
    let states = k0.states();
    match (x, y) {
        (CuntzClass::Proj(v), CuntzClass::Proj(w)) => {
            let diff: Vec<i64> = (0..v.len()).map(|j| w[j] - v[j]).collect();
            if diff.iter().all(|&c| c == 0) {
                return true;
            }
            let mut all_positive = true;
            for i in 0..n {
                let tv = trace_value(states.row(i), v);
                let tw = trace_value(states.row(i), w);
                if tw <= tv {
                    all_positive = false;
                }
            }
            all_positive
        }
        (CuntzClass::Soft(f), CuntzClass::Soft(g)) => {
            let mut ok = true;
            for i in 0..n {
                if f.values()[i] > g.values()[i] {
                    ok = false;
                }
            }
            ok
        }
        (CuntzClass::Soft(f), CuntzClass::Proj(w)) => {
            let mut ok = true;
            for i in 0..n {
                if f.values()[i] > trace_value(states.row(i), w) {
                    ok = false;
                }
            }
            ok
        }
        (CuntzClass::Proj(v), CuntzClass::Soft(g)) => {
            let mut ok = true;
            for i in 0..n {
                if trace_value(states.row(i), v) >= g.values()[i] {
                    ok = false;
                }
            }
            ok
        }
    }
}
