use rvqite_lab::config::RunConfig;
use rvqite_lab::engine::sweep::run_grid;

fn main() {
    let mut config = RunConfig::default();
    config.model.n_sites = 8;
    config.model.m_over_g = 1.0;
    config.solver.seed = 7;
    config.sweep.theta_points = 21;
    config.sweep.mu_points = 21;
    config.sweep.boundary_q = vec![-2, -1, 0, 1, 2];
    let args: Vec<String> = std::env::args().collect();
    for arg in &args[1..] {
        let (key, value) = arg.split_once('=').unwrap();
        match key {
            "dtau" => config.solver.dtau = value.parse().unwrap(),
            "iters" => config.solver.max_iters = value.parse().unwrap(),
            "warm_iters" => config.sweep.warm_iters = value.parse().unwrap(),
            "jitter" => config.sweep.warm_jitter = value.parse().unwrap(),
            "eps" => config.solver.epsilon = value.parse().unwrap(),
            "warm" => config.sweep.warm_start = value.parse().unwrap(),
            _ => panic!("unknown key {key}"),
        }
    }
    let t0 = std::time::Instant::now();
    let output = run_grid(&config, config.sweep.warm_start).unwrap();
    eprintln!("sweep took {:?}", t0.elapsed());

    // charge map: columns = theta (left -1 .. right +1), rows = mu top +1.5 .. bottom -1.5
    println!("rounded <Q> map (rows: mu high->low):");
    for row in (0..output.axis2.len()).rev() {
        let mut line = String::new();
        for col in 0..output.axis1.len() {
            let c = &output.cells[col][row];
            let ch = match c.error {
                Some(_) => 'E',
                None => {
                    let r = c.charge.round() as i64;
                    match r {
                        -4..=-1 => char::from_digit((-r) as u32, 10).unwrap().to_ascii_lowercase(),
                        0 => '.',
                        1..=4 => char::from_digit(r as u32, 10).unwrap(),
                        _ => '?',
                    }
                }
            };
            line.push(ch);
        }
        println!("mu={:+.2}: {line}", output.axis2[row]);
    }
    // also delta between rounded charge and fractional part magnitude
    let mut max_frac = 0.0f64;
    let mut frac_count = 0;
    for col in &output.cells {
        for c in col {
            if c.error.is_none() {
                let frac = (c.charge - c.charge.round()).abs();
                max_frac = max_frac.max(frac);
                if frac > 0.2 { frac_count += 1; }
            }
        }
    }
    println!("max |<Q> - round|: {max_frac:.3}, cells with frac > 0.2: {frac_count}");
    println!("boundary roots:");
    for &(q, t, mu, _) in &output.boundary {
        println!("  q={q:+} t={t:+.2} mu*={mu:+.4}");
    }
}
