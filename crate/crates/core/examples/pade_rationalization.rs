//! Replace a dead time by Padé approximants of increasing order and watch
//! the phase error shrink.

use bode_pid::lti::{make_plant, rational_phase};
use bode_pid::pade::{pade_tf, pade_weights, rationalize};

fn main() -> bode_pid::Result<()> {
    for r in 1..=4 {
        println!("order {r}: weights {:?}", pade_weights(r)?);
    }

    let delay = 1.0;
    println!("{:>6} {:>12} {:>12} {:>12}", "omega", "r=1", "r=2", "r=3");
    for omega in [0.25, 0.5, 1.0, 2.0] {
        let errs: Vec<String> = (1..=3)
            .map(|r| {
                let p = pade_tf(delay, r)?;
                Ok(format!("{:>12.3e}", (rational_phase(&p, omega)? + omega * delay).abs()))
            })
            .collect::<bode_pid::Result<_>>()?;
        println!("{:>6} {}", omega, errs.join(" "));
    }

    let plant = make_plant(&[1.0], &[1.0, 5.0, 10.0, 10.0, 5.0, 1.0], 0.1)?;
    let rational = rationalize(&plant, 1)?.monic();
    println!("rationalized plant num {:?}", rational.num().coeffs());
    println!("rationalized plant den {:?}", rational.den().coeffs());
    Ok(())
}
