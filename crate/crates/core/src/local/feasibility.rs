use num_traits::One;

use crate::algebra::{int, rat, Rat};
use crate::classifier::{enumerate_candidates, legal_divisors, QTag};

/// Degree-sum arithmetic for the three-constant forms with an exponent
/// pattern that is not a multiple of `m` everywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub tag: QTag,
    pub m: u32,
    pub s: u8,
    /// Whether the tag's divisibility conditions admit `m`.
    pub admissible_m: bool,
    /// `deg Q / m` for each admissible `n` (QE7), or the single pattern.
    pub required_sums: Vec<(Option<u32>, Rat)>,
    /// Ramification sum `sum 1/n_j (+ 1/2 for s = 1)` per `n`.
    pub ramification: Vec<(Option<u32>, Rat)>,
    /// Values of `n` (QE7) that survive; `None` entries for tags without `n`.
    pub admissible_n: Vec<Option<u32>>,
    pub feasible: bool,
    /// Set when exactly one `n` survives.
    pub forced_n: Option<u32>,
    /// For QE7 with `s = 1`, the values `c` with `k1 = c m`.
    pub k1_multiples: Vec<u32>,
    pub note: String,
}

/// Exponents divided by `m`, per value of `n` for QE7.
fn exponent_fractions(tag: QTag, m: u32) -> Vec<(Option<u32>, Vec<Rat>)> {
    let one = Rat::one();
    match tag {
        QTag::QE7 => {
            legal_divisors(m).into_iter().map(|n| (Some(n), vec![one.clone(), one.clone(), rat(2, n as i64)])).collect()
        }
        QTag::QE8 => vec![(None, vec![one, rat(2, 3), rat(2, 3)])],
        QTag::QE9 => vec![(None, vec![one, rat(2, 3), rat(1, 2)])],
        QTag::QE10 => vec![(None, vec![one, rat(2, 3), rat(2, 5)])],
        _ => Vec::new(),
    }
}

/// Decides whether positive integers `beta` can meet the degree balance
/// `sum beta_i m = deg Q` (`s = 0`), or `beta_1 m / 2 + sum beta_i m = deg Q`
/// with the extra ramified value admitted by the second main theorem
/// (`s = 1`).
pub fn degree_feasibility(tag: QTag, m: u32, s: u8) -> FeasibilityReport {
    let mut report = FeasibilityReport {
        tag,
        m,
        s,
        admissible_m: false,
        required_sums: Vec::new(),
        ramification: Vec::new(),
        admissible_n: Vec::new(),
        feasible: false,
        forced_n: None,
        k1_multiples: Vec::new(),
        note: String::new(),
    };
    if !matches!(tag, QTag::QE7 | QTag::QE8 | QTag::QE9 | QTag::QE10) {
        report.note = format!("{tag} has no degree-sum condition");
        return report;
    }
    report.admissible_m = !enumerate_candidates(m, tag).is_empty();
    let half = rat(1, 2);
    for (n, fr) in exponent_fractions(tag, m) {
        let total: Rat = fr.iter().sum();
        // A factor with exponent e m ramifies with index n_j = 2/e.
        let mut ram: Rat = fr.iter().map(|e| e / int(2)).sum();
        if s == 1 {
            ram += &half;
        }
        report.required_sums.push((n, total.clone()));
        report.ramification.push((n, ram.clone()));
        let ok = if s == 0 {
            total.is_integer() && total >= Rat::one()
        } else {
            // 2T <= sum of truncated counts needs the ramification sum to
            // reach two; then beta_1/2 + sum beta_i = total needs 2 total
            // integral and at least 1/2.
            ram >= int(2) && (&total * int(2)).is_integer() && total >= half
        };
        if ok {
            report.admissible_n.push(n);
            if tag == QTag::QE7 && s == 1 {
                let t = total.to_integer();
                let top: u32 = t.try_into().unwrap_or(0);
                report.k1_multiples = (1..=top).collect();
            }
        }
    }
    if !report.admissible_m {
        report.admissible_n.clear();
        report.k1_multiples.clear();
    }
    report.feasible = !report.admissible_n.is_empty();
    if let [Some(n)] = report.admissible_n.as_slice() {
        report.forced_n = Some(*n);
    }
    report.note = if !report.admissible_m {
        format!("{tag} is not admissible for m = {m}")
    } else if report.feasible {
        match tag {
            QTag::QE7 if s == 1 => "beta_1/2 + sum beta_i = 3 with n = 2".to_string(),
            QTag::QE7 => "sum beta_i = 2 + 2/n forces n = 2".to_string(),
            _ => "feasible".to_string(),
        }
    } else if s == 0 {
        let (_, t) = &report.required_sums[0];
        if tag == QTag::QE7 {
            "no n >= 2 makes 2 + 2/n an integer other than n = 2".to_string()
        } else {
            format!("sum beta_i = {t} is not an integer")
        }
    } else {
        let (_, r) = &report.ramification[0];
        format!("ramification sum {r} < 2")
    };
    report
}

/// `n` values of QE7 that can occur at all (union over `s`).
pub fn qe7_admissible_n(m: u32) -> Vec<u32> {
    let mut out: Vec<u32> =
        [0u8, 1].iter().flat_map(|&s| degree_feasibility(QTag::QE7, m, s).admissible_n).flatten().collect();
    out.sort_unstable();
    out.dedup();
    out.retain(|n| legal_divisors(m).contains(n));
    out
}
