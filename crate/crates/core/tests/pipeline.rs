use std::fs;

use cvtomo::experiments::{parse_config, preset, run, RunOptions};
use cvtomo::Error;

fn lines(path: &std::path::Path) -> Vec<String> {
    fs::read_to_string(path).unwrap().lines().map(str::to_owned).collect()
}

#[test]
fn fig5_files_have_documented_headers() {
    let dir = tempfile::tempdir().unwrap();
    let config = preset("fig5").unwrap().config().unwrap();
    let bundle = run(
        &config,
        &RunOptions {
            out_dir: dir.path().to_path_buf(),
            timestamp: 42,
        },
    )
    .unwrap();
    assert_eq!(bundle.dir, dir.path().join("fig5"));

    let tom = lines(&bundle.dir.join("tomogram_0001.dat"));
    assert_eq!(tom[0], "# cvtomo tomogram");
    assert_eq!(tom[1], "# time kappa*t 5.0000000000000000e0");
    assert!(tom[2].starts_with("# axis theta 0.0000000000000000e0 "));
    assert!(tom[2].ends_with(" 64"));
    let x_axis: Vec<&str> = tom[3].split(' ').collect();
    assert_eq!(&x_axis[..3], ["#", "axis", "X"]);
    let points: usize = x_axis[5].parse().unwrap();
    assert_eq!(points, config.grid.points);
    assert_eq!(tom.len(), 4 + 64);
    assert!(tom[4..].iter().all(|row| row.split(' ').count() == points));

    let wig = lines(&bundle.dir.join("wigner_0003.dat"));
    assert_eq!(wig[0], "# cvtomo wigner");
    assert_eq!(wig[1], "# time kappa*t 1.5000000000000000e1");
    assert!(wig[2].starts_with("# axis beta2 "));
    assert!(wig[3].starts_with("# axis beta1 "));
    assert_eq!(wig.len(), 4 + config.grid.wigner_points);

    let sc = lines(&bundle.dir.join("s_c.dat"));
    assert_eq!(sc[0], "# cvtomo series s_c");
    assert_eq!(sc[1], "# axis kappa*t 0.0000000000000000e0 1.5000000000000000e1 4");
    assert_eq!(sc[2], "# columns kappa*t s_c");
    assert_eq!(sc.len(), 7);

    let manifest = fs::read_to_string(&bundle.manifest).unwrap();
    let head: Vec<&str> = manifest.lines().take(4).collect();
    assert_eq!(
        head,
        ["# cvtomo manifest", "# version = 0.1.0", "# timestamp = 42", "# time convention = kappa*t"]
    );
    assert_eq!(parse_config(&manifest).unwrap(), config);
}

#[test]
fn two_mode_tomogram_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = parse_config(
        "name = pair\nmodel = ap\nap.omega = 1\nap.omega0 = 1\nap.gamma = 0.01\nap.g = 1\n\
         initial.field = fock 2\ninitial.atom = fock 0\ntime.list = 1\n\
         tomogram2d.theta_a = 0.5\ntomogram2d.theta_b = 1\nproducts = tomogram2d, sle, xi_ipr\n",
    )
    .unwrap();
    let bundle = run(
        &config,
        &RunOptions {
            out_dir: dir.path().to_path_buf(),
            timestamp: 0,
        },
    )
    .unwrap();
    let t2 = lines(&bundle.dir.join("tomogram2d_0000.dat"));
    assert_eq!(t2[0], "# cvtomo tomogram2d");
    assert_eq!(t2[1], "# time g*t 1.0000000000000000e0");
    assert_eq!(t2[2], "# angles theta_a 5.0000000000000000e-1 theta_b 1.0000000000000000e0");
    assert!(t2[3].starts_with("# axis X_A "));
    assert!(t2[4].starts_with("# axis X_B "));
    assert!(bundle.dir.join("sle.dat").is_file());
    assert!(bundle.dir.join("xi_ipr.dat").is_file());
}

#[test]
fn validation_reports_every_problem() {
    let text = "name = bad\nmodel = kerr\nkerr.lambda = -1\ninitial.field = coherent 1 0\n\
                time.subpackets = 0\nproducts = sle\ngamma2 = 4\n";
    let Err(Error::Config(problems)) = parse_config(text) else {
        panic!("expected a configuration error");
    };
    let joined = problems.join("\n");
    assert!(problems.len() >= 4, "{joined}");
    assert!(joined.contains("gamma2"));
    assert!(joined.contains("sle"));
}
