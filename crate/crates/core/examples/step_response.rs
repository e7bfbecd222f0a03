//! Closed-loop step response of a fixed PID controller, with metrics, a CSV
//! and an SVG chart written to the system temp directory.

use bode_pid::lti::make_plant;
use bode_pid::simulate::{step_closed_loop, to_csv};
use bode_pid::svg::step_chart;
use bode_pid::{PidController, SimConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let plant = make_plant(&[1.0], &[1.0, 5.0, 10.0, 10.0, 5.0, 1.0], 0.1)?;
    let k = PidController::new(1.3726, 2.86, 1.3327)?;
    let step = step_closed_loop(&plant, &k, &SimConfig::default())?;

    let m = &step.metrics;
    println!("ITAE {:.4}", m.itae);
    println!("overshoot {:.2}%", m.overshoot * 100.0);
    println!("2% settling {:.2} s", m.settling_time_2pct);
    println!("steady-state error {:.2e}", m.steady_state_error);

    let dir = std::env::temp_dir();
    std::fs::write(dir.join("step_response.csv"), to_csv(&step))?;
    std::fs::write(dir.join("step_response.svg"), step_chart(&[("pid", &step)]))?;
    println!("wrote {}", dir.join("step_response.{csv,svg}").display());
    Ok(())
}
