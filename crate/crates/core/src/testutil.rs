use crate::tuple::FiveTuple;

/// Every admissible tuple (all orderings) with entries bounded by `bound`.
pub(crate) fn admissible_up_to(bound: i64) -> Vec<FiveTuple> {
    let odd: Vec<i64> = (-bound..=bound).filter(|x| x % 2 != 0).collect();
    let mut out = vec![];
    for &a in &odd {
        for &b in &odd {
            for &c in &odd {
                for &d in &odd {
                    for &e in &odd {
                        let q = FiveTuple::new([a, b, c, d, e]).unwrap();
                        if q.is_admissible() {
                            out.push(q);
                        }
                    }
                }
            }
        }
    }
    out
}
