use fchq_core::grid::{inner, Field, GridSpec};
use fchq_core::functionals::dilate;
fn main() {
    let g = GridSpec::<f64>::new(1, 12.0, 256).unwrap();
    let sigma = 1.0;
    let u = Field::from_fn(g, move |x| (-(x[0] / sigma).powi(2) / 2.0).exp());
    for &t in &[0.5, 0.8, 1.25, 2.0] {
        let ut = dilate(&u, t).unwrap();
        let mass_ratio = inner(&ut, &ut) / inner(&u, &u);
        println!("t={t}: mass_ratio={mass_ratio} expected={t}");
        // print a few sample values
        let h = g.spacing();
        for &x in &[0.0, 1.0] {
            let i = ((x + 12.0) / h).round() as usize;
            println!("  x={x}: ut={:.6} u(x/t)={:.6}", ut.values()[i], (-(x / t).powi(2) / 2.0_f64).exp());
        }
    }
}
