//! All three tuning methods on the same delayed plant, side by side.

use bode_pid::lti::make_plant;
use bode_pid::pipeline::{tune, Method, TuneOptions};
use bode_pid::DesignSpec;

fn main() -> bode_pid::Result<()> {
    let plant = make_plant(&[1.0], &[1.0, 5.0, 10.0, 10.0, 5.0, 1.0], 0.1)?;
    let spec = DesignSpec::from_degrees(0.4, 50.0, 65.0)?;

    println!(
        "{:<11} {:>7} {:>7} {:>7} {:>8} {:>10} {:>12}",
        "method", "Kp", "Ti", "Td", "ITAE", "overshoot", "slope error"
    );
    for method in Method::ALL {
        let mut options = TuneOptions::new(method);
        options.ga.seed = Some(42);
        let (report, _) = tune(&plant, &spec, &options)?;
        let k = &report.controller;
        println!(
            "{:<11} {:>7.4} {:>7.4} {:>7.4} {:>8.4} {:>9.1}% {:>11.1}%",
            method.name(),
            k.kp(),
            k.ti(),
            k.td(),
            report.metrics.itae,
            report.metrics.overshoot * 100.0,
            report.design.slope_error_fraction * 100.0
        );
    }
    Ok(())
}
