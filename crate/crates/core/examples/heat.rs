//! Fractional heat flow `dv/dt + M_alpha v = 0` by implicit Euler.

use sspec::fracpow::{heat_step, BoxGrid, GridOperator};

fn main() -> sspec::Result<()> {
    let grid = BoxGrid::cube(1.0, 4)?;
    let op = GridOperator::gradient(grid)?;
    let f0: Vec<f64> = (0..grid.len())
        .map(|p| {
            let x = grid.position(p);
            x.iter().map(|t| (std::f64::consts::PI * t).sin()).product()
        })
        .collect();
    let (dt, steps) = (0.01, 10);
    for alpha in [0.3, 0.6, 0.9, 1.0] {
        let traj = heat_step(&op, alpha, &f0, dt, steps, None)?;
        let rate = -(traj.norms[steps] / traj.norms[0]).ln() / (steps as f64 * dt);
        println!("alpha {alpha}: |v(T)| = {:.6}, mean decay rate {rate:.3}", traj.norms[steps]);
    }
    Ok(())
}
