//! Frequency response, static gain, gain crossover and slope estimates of a
//! fifth-order lag with dead time.

use bode_pid::lti::{crossover_frequency, freq_response, make_plant, static_gain};
use bode_pid::slopes::{slopes_bode_delayed, slopes_exact};
use bode_pid::PidController;

fn main() -> bode_pid::Result<()> {
    let plant = make_plant(&[1.0], &[1.0, 5.0, 10.0, 10.0, 5.0, 1.0], 0.1)?;
    println!("static gain {}", static_gain(&plant)?);

    println!("{:>8} {:>10} {:>10}", "omega", "|G|", "phase deg");
    for omega in [0.05, 0.1, 0.2, 0.4, 0.8, 1.6] {
        let fp = freq_response(&plant, omega)?;
        println!("{:>8} {:>10.5} {:>10.3}", omega, fp.magnitude, fp.phase.to_degrees());
    }

    for (name, s) in [("exact", slopes_exact(&plant, 0.4)?), ("bode", slopes_bode_delayed(&plant, 0.4)?)] {
        println!("{name:>6} slopes at 0.4: s_a {:.5} s_p {:.5}", s.s_a, s.s_p);
    }

    let k = PidController::proportional(2.0)?;
    println!("crossover with Kp = 2: {:.6} rad/s", crossover_frequency(&plant, &k)?);
    Ok(())
}
