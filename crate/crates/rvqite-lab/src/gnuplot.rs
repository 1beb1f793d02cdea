//! Optional gnuplot script emission (`--gnuplot`): small batch scripts next
//! to the CSV outputs; no plotting dependency in the crates themselves.

use std::path::Path;

use anyhow::Result;

use crate::engine::sweep::Plane;

fn write(path: &Path, body: &str) -> Result<()> {
    std::fs::write(path, body)?;
    Ok(())
}

pub fn sweep_script(out_dir: &Path, plane: Plane, with_boundary: bool) -> Result<()> {
    let axis2 = plane.axis2_name();
    let overlay = if with_boundary {
        ", 'sweep_boundary.csv' using 2:3 with points pt 7 ps 0.5 lc rgb 'red' title 'exact boundary'"
    } else {
        ""
    };
    let body = format!(
        r#"# gnuplot sweep_heatmaps.gp
set datafile separator ","
set terminal pngcairo size 1500,500
set output "sweep_heatmaps.png"
set multiplot layout 1,3
set view map
set xlabel "theta/2pi"
set ylabel "{axis2}"
do for [col in "5 6 7"] {{
    title_of = (col eq "5") ? "charge" : (col eq "6") ? "chiral condensate" : "electric field"
    set title title_of
    splot 'sweep_cells.csv' using 1:2:(column(col+0)) with points pt 5 ps 2 palette notitle{overlay}
}}
unset multiplot
"#
    );
    write(&out_dir.join("sweep_heatmaps.gp"), &body)
}

pub fn benchmark_script(out_dir: &Path) -> Result<()> {
    let body = r#"# gnuplot benchmark_ratio.gp
set datafile separator ","
set terminal pngcairo size 800,600
set output "benchmark_ratio.png"
set xlabel "iteration"
set ylabel "Ratio"
set key bottom right
plot for [m in "regularized pseudo_inverse gradient"] \
    'benchmark_stats.csv' using 3:(strcol(1) eq m ? $4 : NaN) with lines title m
"#;
    write(&out_dir.join("benchmark_ratio.gp"), body)
}

pub fn spectra_script(out_dir: &Path) -> Result<()> {
    let body = r#"# gnuplot spectra_levels.gp
set datafile separator ","
set terminal pngcairo size 800,600
set output "spectra_levels.png"
set xlabel "theta/2pi"
set ylabel "E_0^{(q)} / g"
set key outside
plot for [q=-3:3] 'spectra.csv' using 4:(int(column(1)) == q ? $3 : NaN) \
    with lines title sprintf("q = %d", q)
"#;
    write(&out_dir.join("spectra_levels.gp"), body)
}

pub fn spectrum_script(out_dir: &Path) -> Result<()> {
    let body = r#"# gnuplot spectrum_hist.gp
set datafile separator ","
set terminal pngcairo size 1000,400
set output "spectrum_hist.png"
set multiplot layout 1,2
set style fill solid 0.6
set xlabel "log10 |lambda|"
set ylabel "count"
set title "negative eigenvalues"
plot 'spectrum_hist.csv' using (($2+$3)/2):(strcol(1) eq "negative" ? $4 : NaN) \
    with boxes notitle
set title "positive eigenvalues"
plot 'spectrum_hist.csv' using (($2+$3)/2):(strcol(1) eq "positive" ? $4 : NaN) \
    with boxes notitle
unset multiplot
"#;
    write(&out_dir.join("spectrum_hist.gp"), body)
}
