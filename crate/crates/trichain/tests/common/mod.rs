#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub const BIN: &str = env!("CARGO_BIN_EXE_trichain");

/// A CLI invocation whose output is pinned by a golden file.
pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    /// writes a graymap through `--out` instead of stdout
    pub raster: bool,
}

pub const CASES: &[Case] = &[
    Case {
        name: "fixed_points_f",
        args: &["fixed-points", "--mu", "2.1", "--beta", "3.36", "--gamma", "6.5"],
        raster: false,
    },
    Case {
        name: "fixed_points_a",
        args: &["fixed-points", "--mu", "0.5", "--beta", "3", "--gamma", "6"],
        raster: false,
    },
    Case { name: "zone_f", args: &["zone", "--mu", "2.1", "--beta", "3.36", "--gamma", "7.3"], raster: false },
    Case { name: "zone_boundary", args: &["zone", "--mu", "1", "--beta", "3", "--gamma", "6"], raster: false },
    Case {
        name: "simulate_extinction",
        args: &[
            "simulate", "--mu", "3", "--beta", "4.5", "--gamma", "7.5", "--x0", "0.25", "--y0", "0.39", "--z0", "0",
            "--steps", "60",
        ],
        raster: false,
    },
    Case {
        name: "simulate_window",
        args: &["simulate", "--mu", "2.1", "--beta", "3.36", "--gamma", "7.1", "--transient", "10", "--steps", "5"],
        raster: false,
    },
    Case {
        name: "raster_z0",
        args: &["raster", "--mu", "3", "--beta", "4.5", "--gamma", "7.5", "--res", "48x32"],
        raster: true,
    },
    Case {
        name: "raster_y_slice",
        args: &[
            "raster",
            "--mu",
            "2.1",
            "--beta",
            "3.36",
            "--gamma",
            "6.5",
            "--plane",
            "y=0.02",
            "--bounds",
            "0,0.8,0,0.3",
            "--res",
            "24x16",
            "--max-iter",
            "400",
        ],
        raster: true,
    },
    Case {
        name: "lyapunov_short",
        args: &[
            "lyapunov",
            "--mu",
            "2.1",
            "--beta",
            "3.89",
            "--gamma",
            "6.5",
            "--transient",
            "2000",
            "--steps",
            "5000",
        ],
        raster: false,
    },
    Case {
        name: "sweep_gamma_fixed_points",
        args: &[
            "sweep",
            "--from",
            "2.1,3.36,5",
            "--to",
            "2.1,3.36,9.4",
            "--samples",
            "12",
            "--emit",
            "fixed-points",
            "--transient",
            "0",
            "--keep",
            "1",
        ],
        raster: false,
    },
    Case {
        name: "sweep_beta_bifurcation",
        args: &[
            "sweep",
            "--from",
            "2.1,2.5,6.5",
            "--to",
            "2.1,5,6.5",
            "--samples",
            "9",
            "--transient",
            "3000",
            "--keep",
            "8",
        ],
        raster: false,
    },
    Case {
        name: "sweep_maxima",
        args: &[
            "sweep",
            "--from",
            "2.1,3.36,6.8",
            "--to",
            "2.1,3.36,7.18",
            "--samples",
            "3",
            "--emit",
            "maxima",
            "--x0",
            "0.2",
        ],
        raster: false,
    },
    Case {
        name: "sweep_lyapunov_continuation",
        args: &[
            "sweep",
            "--from",
            "2.1,3.36,6.5",
            "--to",
            "2.1,4.99,6.5",
            "--samples",
            "5",
            "--emit",
            "lyapunov",
            "--transient",
            "2000",
            "--lyap-steps",
            "3000",
            "--continuation",
        ],
        raster: false,
    },
    Case {
        name: "sweep_spectrum",
        args: &[
            "sweep",
            "--from",
            "2.1,3.36,7.1",
            "--to",
            "2.1,3.36,7.18",
            "--samples",
            "2",
            "--emit",
            "spectrum",
            "--transient",
            "5000",
            "--keep",
            "64",
        ],
        raster: false,
    },
];

pub fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("TRICHAIN_THREADS").output().expect("spawn trichain")
}

/// Output files of one run: `(suffix, bytes)`.
pub type Artifacts = Vec<(String, Vec<u8>)>;

/// Runs a case with the given thread count and collects everything it wrote.
pub fn run_case(case: &Case, threads: usize, dir: &Path) -> Artifacts {
    let threads = threads.to_string();
    let mut args: Vec<&str> = case.args.to_vec();
    args.extend(["--threads", &threads]);
    if case.raster {
        let out = dir.join(format!("{}-{threads}.pgm", case.name));
        let out_s = out.to_str().unwrap().to_owned();
        args.extend(["--out", &out_s]);
        let o = run(&args);
        assert!(o.status.success(), "{}: {}", case.name, String::from_utf8_lossy(&o.stderr));
        vec![
            ("pgm".into(), std::fs::read(&out).unwrap()),
            ("legend.csv".into(), std::fs::read(out.with_extension("legend.csv")).unwrap()),
        ]
    } else {
        let o = run(&args);
        assert!(o.status.success(), "{}: {}", case.name, String::from_utf8_lossy(&o.stderr));
        vec![("csv".into(), o.stdout)]
    }
}

pub fn golden_path(case: &Case, suffix: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{}.{suffix}", case.name))
}

pub fn available_threads() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).max(4)
}
