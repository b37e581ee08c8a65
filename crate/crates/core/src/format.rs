//! Decimal formatting and CSV rows with a fixed byte layout.
//!
//! Floats are written like C's `%.17g`: 17 significant digits, trailing
//! zeros dropped, exponent form when the decimal exponent is below −4 or at
//! least 17. Seventeen digits round-trip every `f64`.

use std::io::{self, Write};

use crate::dynamics::Trajectory;
use crate::phase::{PhaseResult, SinusoidSummary};

const SIG_DIGITS: usize = 17;

pub fn fmt_g17(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    // `{:.16e}` rounds to 17 significant digits and exposes the exponent
    let sci = format!("{:.*e}", SIG_DIGITS - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");

    if exp < -4 || exp >= SIG_DIGITS as i32 {
        let mantissa = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
    trim_fraction(&format!("{v:.decimals$}")).to_string()
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Joins formatted fields with commas and terminates the line with LF.
pub fn csv_line(fields: &[String]) -> String {
    let mut line = fields.join(",");
    line.push('\n');
    line
}

pub const TRAJECTORY_HEADER: &str = "t,phi,omega";
pub const PHASE_HEADER: &str = "T,phi_AB,phi_f,route";
pub const SINUSOID_HEADER: &str = "omega_T,f,ratio";

pub fn write_trajectory_csv<W: Write>(traj: &Trajectory, mut out: W) -> io::Result<()> {
    out.write_all(TRAJECTORY_HEADER.as_bytes())?;
    out.write_all(b"\n")?;
    for s in &traj.samples {
        out.write_all(csv_line(&[fmt_g17(s.t), fmt_g17(s.phi), fmt_g17(s.omega)]).as_bytes())?;
    }
    Ok(())
}

impl PhaseResult {
    pub fn csv_row(&self) -> String {
        csv_line(&[
            fmt_g17(self.t),
            fmt_g17(self.phi_ab),
            fmt_g17(self.phi_f),
            self.route.label().to_string(),
        ])
    }
}

impl SinusoidSummary {
    pub fn csv_row(&self) -> String {
        csv_line(&[fmt_g17(self.omega_t), fmt_g17(self.f), fmt_g17(self.ratio)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{Branch, TrajectoryMethod, TrajectorySample};
    use crate::phase::Route;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn matches_c_printf() {
        // expected strings produced by C/Python "%.17g"
        let cases = [
            (PI, "3.1415926535897931"),
            (1.0, "1"),
            (0.1, "0.10000000000000001"),
            (-2.5, "-2.5"),
            (1e-7, "9.9999999999999995e-08"),
            (1.5e-5, "1.5e-05"),
            (1e-5, "1.0000000000000001e-05"),
            (123456.0, "123456"),
            (1e17, "1e+17"),
            (2f64.powi(70), "1.1805916207174113e+21"),
            (0.0001, "0.0001"),
            (0.0, "0"),
        ];
        for (v, want) in cases {
            assert_eq!(fmt_g17(v), want, "{v}");
        }
    }

    #[test]
    fn phase_row_layout() {
        let r = PhaseResult {
            t: PI,
            phi_ab: 1.0,
            phi_f: PI,
            route: Route::NumericTrajectories,
        };
        assert_eq!(r.csv_row(), "3.1415926535897931,1,3.1415926535897931,numeric\n");
    }

    #[test]
    fn trajectory_csv_layout() {
        let traj = Trajectory {
            branch: Branch::C1,
            samples: vec![
                TrajectorySample { t: 0.0, phi: 0.0, omega: 1.0 },
                TrajectorySample { t: 0.5, phi: 0.5, omega: 1.0 },
            ],
            step: 0.5,
            method: TrajectoryMethod::Rk4,
        };
        let mut buf = Vec::new();
        write_trajectory_csv(&traj, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "t,phi,omega\n0,0,1\n0.5,0.5,1\n");
    }

    proptest! {
        #[test]
        fn round_trips(v in any::<f64>().prop_filter("finite", |v| v.is_finite())) {
            let s = fmt_g17(v);
            prop_assert_eq!(s.parse::<f64>().unwrap(), v);
        }
    }
}
