//! Special / restricted classification and admissible-region capture.

use finite_type_lindelof::curves::{
    non_special_family, restricted_family, special_tangential_curve, NamedCurve,
};
use finite_type_lindelof::{
    classify, eventually_in_admissible, ClassifyOptions, ComplexPoint, DomainModel,
};

fn main() -> finite_type_lindelof::Result<()> {
    let frame = DomainModel::egg(2).boundary_frame(ComplexPoint::real(1.0, 0.0), 4)?;
    let opts = ClassifyOptions::default();

    let mut curves = restricted_family(4);
    curves.extend(non_special_family(4));
    curves.push(NamedCurve::new("drifting", special_tangential_curve(4)));

    println!(
        "{:<16} {:<8} {:<14} {:<10} capture",
        "curve", "special", "nontangential", "restricted"
    );
    for c in &curves {
        let class = classify(&c.curve, &frame, &opts)?;
        let capture = eventually_in_admissible(&c.curve, &frame, &opts.alpha_grid, &opts.schedule);
        println!(
            "{:<16} {:<8} {:<14} {:<10} {capture:?}",
            c.name,
            class.special.to_string(),
            class.nontangential_projection.to_string(),
            class.restricted.to_string()
        );
    }
    Ok(())
}
