//! Sign tables `ε(m)`, `ε⁺_{a,b}(m)`, `ε⁻_{a,b}(m)`.

pub fn eps(m: i64) -> i64 {
    i64::from(m >= 0)
}

pub fn eps_plus(a: i64, b: i64, m: i64) -> i64 {
    if a >= m && b >= m {
        1
    } else if a < m && b < m {
        -1
    } else {
        0
    }
}

pub fn eps_minus(a: i64, b: i64, m: i64) -> i64 {
    if b < m && m <= a {
        1
    } else if a < m && m <= b {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_match_case_definitions() {
        for a in -10..=10 {
            for b in -10..=10 {
                for m in -10..=10 {
                    assert_eq!(eps(m), if m >= 0 { 1 } else { 0 });
                    let p = match (a >= m, b >= m) {
                        (true, true) => 1,
                        (false, false) => -1,
                        _ => 0,
                    };
                    assert_eq!(eps_plus(a, b, m), p);
                    let q = if b < m && m <= a {
                        1
                    } else if a < m && m <= b {
                        -1
                    } else {
                        0
                    };
                    assert_eq!(eps_minus(a, b, m), q);
                    // ε⁻ is antisymmetric in (a, b)
                    assert_eq!(eps_minus(a, b, m), -eps_minus(b, a, m));
                }
            }
        }
    }
}
