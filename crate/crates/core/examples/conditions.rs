//! Coefficient conditions for the fractional-power integrals.

use sspec::fracpow::{
    boundary_rows_proportionality, check_dirichlet_conditions, check_robin_conditions, check_unbounded_conditions,
    dirichlet_trig_threshold, BoxGrid, CoefficientField, ConditionReport, TraceConstant,
};

fn show(r: &ConditionReport) {
    println!("{} passed={}", r.theorem, r.passed());
    for row in &r.rows {
        println!("  {:<55} lhs {:>10.4e} rhs {:>10.4e} margin {:+.4e}", row.inequality, row.lhs, row.rhs, row.margin);
    }
    for n in &r.notes {
        println!("  note: {n}");
    }
}

fn main() -> sspec::Result<()> {
    let grid = BoxGrid::cube(1.0, 8)?;
    let threshold = dirichlet_trig_threshold(1.0, grid.lengths);
    println!("trig amplitude threshold for c = 1: {threshold:.6}");
    for eps in [0.5 * threshold, 1.5 * threshold] {
        let coeffs = [
            CoefficientField::Trig { base: 1.0, amplitude: eps, wavenumbers: [1, 0, 0] },
            CoefficientField::constant(1.0),
            CoefficientField::constant(1.0),
        ];
        show(&check_dirichlet_conditions(&coeffs, &grid)?);
    }

    let unit = [0, 1, 2].map(|_| CoefficientField::constant(1.0));
    show(&check_robin_conditions(&unit, &CoefficientField::constant(0.1), &grid, TraceConstant::Estimate(7))?);

    let gauss = [0, 1, 2].map(|_| CoefficientField::Gaussian {
        base: 1.0,
        amplitude: 0.02,
        center: [0.0; 3],
        width: 1.0,
    });
    show(&check_unbounded_conditions(&gauss, [-6.0; 3], [6.0; 3])?);

    let mu = 1.7;
    let bump = [0, 1, 2].map(|_| CoefficientField::Bump { base: mu, amplitude: 0.5 });
    let p = boundary_rows_proportionality(
        &bump,
        &CoefficientField::constant(mu * 0.4),
        &CoefficientField::constant(0.4),
        mu,
        grid.lengths,
        5,
    );
    println!("boundary operators proportional with factor {mu}: exact={} ({} samples)", p.exact, p.samples);
    Ok(())
}
