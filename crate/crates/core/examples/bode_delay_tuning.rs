//! Direct tuning from one frequency-response measurement of the delayed
//! plant, followed by verification.

use bode_pid::lti::make_plant;
use bode_pid::pipeline::tune_bode_delay;
use bode_pid::synthesis::verify_design;
use bode_pid::DesignSpec;

fn main() -> bode_pid::Result<()> {
    let plant = make_plant(&[1.0], &[1.0, 5.0, 10.0, 10.0, 5.0, 1.0], 0.1)?;
    let spec = DesignSpec::from_degrees(0.4, 50.0, 65.0)?;
    let k = tune_bode_delay(&plant, &spec)?;
    println!("Kp {:.4}  Ti {:.4}  Td {:.4}", k.kp(), k.ti(), k.td());

    let report = verify_design(&plant, &k, &spec)?;
    println!(
        "crossover {:.5} rad/s, PM {:.3} deg, slope {:.2} deg ({:.1}% off target)",
        report.achieved_crossover,
        report.achieved_pm.to_degrees(),
        report.achieved_psi.to_degrees(),
        report.slope_error_fraction * 100.0
    );
    Ok(())
}
