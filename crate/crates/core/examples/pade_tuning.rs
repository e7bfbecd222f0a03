//! Tune against Padé-rationalized plants of several orders; every design is
//! verified on the true delayed plant.

use bode_pid::lti::make_plant;
use bode_pid::pipeline::tune_pade;
use bode_pid::synthesis::verify_design;
use bode_pid::DesignSpec;

fn main() -> bode_pid::Result<()> {
    let plant = make_plant(&[1.0], &[1.0, 5.0, 10.0, 10.0, 5.0, 1.0], 0.1)?;
    let spec = DesignSpec::from_degrees(0.4, 50.0, 65.0)?;
    for order in 0..=3 {
        let k = tune_pade(&plant, &spec, order)?;
        let report = verify_design(&plant, &k, &spec)?;
        println!(
            "r={order}: Kp {:.4} Ti {:.4} Td {:.4} | PM {:.2} deg, slope error {:.1}%",
            k.kp(),
            k.ti(),
            k.td(),
            report.achieved_pm.to_degrees(),
            report.slope_error_fraction * 100.0
        );
    }
    Ok(())
}
