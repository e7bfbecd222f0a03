//! ITAE-minimizing genetic search around the Padé-based controller, with the
//! Nyquist slope error capped at 20%.

use bode_pid::ga::{derive_bounds, evolve, GaConfig, DEFAULT_SPREAD};
use bode_pid::lti::make_plant;
use bode_pid::pipeline::tune_pade;
use bode_pid::{DesignSpec, SimConfig};

fn main() -> bode_pid::Result<()> {
    let plant = make_plant(&[1.0], &[1.0, 5.0, 10.0, 10.0, 5.0, 1.0], 0.1)?;
    let spec = DesignSpec::from_degrees(0.4, 50.0, 65.0)?;
    let reference = tune_pade(&plant, &spec, 1)?;
    let config = GaConfig::with_bounds(derive_bounds(&reference, DEFAULT_SPREAD), Some(42));

    let result = evolve(&plant, &spec, &SimConfig::default(), &config)?;
    for (generation, best) in result.history.iter().enumerate().step_by(10) {
        println!("generation {generation:>3}: best ITAE {best:.5}");
    }
    let k = result.best.to_controller()?;
    println!("best Kp {:.4} Ti {:.4} Td {:.4}", k.kp(), k.ti(), k.td());
    println!("ITAE {:.4}, slope error {:.1}%", result.best_itae, result.best_slope_error * 100.0);
    println!("{} evaluations", result.evaluations);
    Ok(())
}
