use std::ffi::CStr;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use nucoh_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(nucoh_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

struct Model(*mut NucohModel);

impl Drop for Model {
    fn drop(&mut self) {
        unsafe { nucoh_model_free(self.0) }
    }
}

#[test]
fn probability_rows_match_library() {
    let m = Model(nucoh_model_new_default());
    let mut row = [0.0; 3];
    let st = unsafe {
        nucoh_probability_row(
            m.0,
            NUCOH_FLAVOR_MU,
            1e16,
            4.5e10,
            2.824e-14,
            row.as_mut_ptr(),
        )
    };
    assert_eq!(st, NucohStatus::Ok);
    let p = nucoh::OscillationParams::default();
    let wp = nucoh::WavePacketConfig::default();
    let want = nucoh::Propagator::matter(&p, &wp, 4.5e10, 2.824e-14, nucoh::ParticleKind::Neutrino)
        .unwrap()
        .row(nucoh::Flavor::Muon, 1e16)
        .unwrap();
    assert_eq!(row, want);

    let mut vac = [0.0; 3];
    let mut mat = [0.0; 3];
    unsafe {
        assert_eq!(
            nucoh_vacuum_probability_row(m.0, NUCOH_FLAVOR_E, 3e14, 4.5e10, vac.as_mut_ptr()),
            NucohStatus::Ok
        );
        assert_eq!(
            nucoh_probability_row(m.0, NUCOH_FLAVOR_E, 3e14, 4.5e10, 0.0, mat.as_mut_ptr()),
            NucohStatus::Ok
        );
    }
    for k in 0..3 {
        assert!((vac[k] - mat[k]).abs() < 1e-9);
    }

    let mut avg = [0.0; 3];
    let mut c = 0.0;
    unsafe {
        assert_eq!(
            nucoh_averaged_probability_row(m.0, NUCOH_FLAVOR_E, 4.5e10, 1e-12, avg.as_mut_ptr()),
            NucohStatus::Ok
        );
        assert_eq!(
            nucoh_l1_from_probabilities(avg.as_ptr(), &mut c),
            NucohStatus::Ok
        );
    }
    assert!((avg.iter().sum::<f64>() - 1.0).abs() < 1e-14);
    assert!(c > 0.0 && c < 1.0);
}

#[test]
fn custom_model_and_setters() {
    let mut params = nucoh_params_default();
    params.mode = NUCOH_MODE_PLANE_WAVE;
    let mut raw = ptr::null_mut();
    assert_eq!(
        unsafe { nucoh_model_new(&params, &mut raw) },
        NucohStatus::Ok
    );
    let m = Model(raw);
    let (mut osc, mut coh) = ([0.0; 3], [0.0; 3]);
    unsafe {
        assert_eq!(
            nucoh_matter_lengths(m.0, 4.5e10, 1e-14, osc.as_mut_ptr(), coh.as_mut_ptr()),
            NucohStatus::Ok
        );
    }
    assert!(coh.iter().all(|c| c.is_finite()));
    let mut row = [0.0; 3];
    let far = 1e3 * coh[NUCOH_PAIR_21 as usize];
    unsafe {
        // Plane waves never decohere.
        assert_eq!(
            nucoh_probability_row(m.0, NUCOH_FLAVOR_E, far, 4.5e10, 0.0, row.as_mut_ptr()),
            NucohStatus::Ok
        );
        let mut wp_row = [0.0; 3];
        assert_eq!(
            nucoh_model_set_mode(m.0, NUCOH_MODE_WAVE_PACKET),
            NucohStatus::Ok
        );
        assert_eq!(
            nucoh_probability_row(m.0, NUCOH_FLAVOR_E, far, 4.5e10, 0.0, wp_row.as_mut_ptr()),
            NucohStatus::Ok
        );
        let mut avg = [0.0; 3];
        assert_eq!(
            nucoh_averaged_probability_row(m.0, NUCOH_FLAVOR_E, 4.5e10, 0.0, avg.as_mut_ptr()),
            NucohStatus::Ok
        );
        assert!((wp_row[0] - avg[0]).abs() < 1e-9);
        assert!((row[0] - avg[0]).abs() > 1e-6 || (row[1] - avg[1]).abs() > 1e-6);
        assert_eq!(
            nucoh_matter_lengths(m.0, 4.5e10, 0.0, osc.as_mut_ptr(), coh.as_mut_ptr()),
            NucohStatus::Ok
        );
    }
    assert!((osc[NUCOH_PAIR_21 as usize] / 1.50996e9 - 1.0).abs() < 1e-4);
    assert!((coh[NUCOH_PAIR_21 as usize] / 7.7504e16 - 1.0).abs() < 1e-4);

    unsafe {
        assert_eq!(
            nucoh_model_set_kind(m.0, NUCOH_KIND_ANTINEUTRINO),
            NucohStatus::Ok
        );
        let mut res = [0.0; 2];
        assert_eq!(
            nucoh_resonance_potentials(m.0, 4.5e10, res.as_mut_ptr()),
            NucohStatus::NotFound
        );
        assert!(!last_error().is_empty());
        assert_eq!(nucoh_model_set_kind(m.0, 7), NucohStatus::InvalidArgument);
    }

    params.theta12 = 2.0;
    let mut raw = ptr::null_mut();
    assert_eq!(
        unsafe { nucoh_model_new(&params, &mut raw) },
        NucohStatus::Domain
    );
    assert!(raw.is_null());
    assert!(last_error().contains("theta12"));
}

#[test]
fn special_potentials() {
    let m = Model(nucoh_model_new_default());
    let mut res = [0.0; 2];
    assert_eq!(
        unsafe { nucoh_resonance_potentials(m.0, 4.5e10, res.as_mut_ptr()) },
        NucohStatus::Ok
    );
    assert!((res[1] / 2.577e-14 - 1.0).abs() < 5e-3);

    let (mut v, mut pair, mut n) = ([0.0; 3], [0i32; 3], 0usize);
    let st = unsafe {
        nucoh_infinite_coherence_potentials(
            m.0,
            4.5e10,
            v.as_mut_ptr(),
            pair.as_mut_ptr(),
            3,
            &mut n,
        )
    };
    assert_eq!(st, NucohStatus::Ok);
    assert_eq!(n, 3);
    assert_eq!(pair, [NUCOH_PAIR_21, NUCOH_PAIR_21, NUCOH_PAIR_32]);
    assert!(v[0] < v[1] && v[1] < v[2]);

    let st = unsafe {
        nucoh_infinite_coherence_potentials(
            m.0,
            4.5e10,
            ptr::null_mut(),
            ptr::null_mut(),
            0,
            &mut n,
        )
    };
    assert_eq!(st, NucohStatus::BufferTooSmall);
    assert_eq!(n, 3);
}

#[test]
fn errors_and_null_handles() {
    let mut row = [0.0; 3];
    unsafe {
        assert_eq!(
            nucoh_probability_row(ptr::null(), 0, 1.0, 1.0, 0.0, row.as_mut_ptr()),
            NucohStatus::NullPointer
        );
        let m = Model(nucoh_model_new_default());
        assert_eq!(
            nucoh_probability_row(m.0, 0, 1.0, 4.5e10, 0.0, ptr::null_mut()),
            NucohStatus::NullPointer
        );
        assert_eq!(
            nucoh_probability_row(m.0, 3, 1.0, 4.5e10, 0.0, row.as_mut_ptr()),
            NucohStatus::InvalidArgument
        );
        assert_eq!(
            nucoh_probability_row(m.0, 0, -1.0, 4.5e10, 0.0, row.as_mut_ptr()),
            NucohStatus::Domain
        );
        assert!(last_error().contains("baseline"));
        let bad = [1.0, -0.5, 0.5];
        let mut c = 0.0;
        assert_eq!(
            nucoh_l1_from_probabilities(bad.as_ptr(), &mut c),
            NucohStatus::Domain
        );
        nucoh_model_free(ptr::null_mut());
    }
    let version = unsafe { CStr::from_ptr(nucoh_version()) }.to_str().unwrap();
    assert_eq!(version, env!("CARGO_PKG_VERSION"));
}

fn header() -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/nucoh.h")).unwrap()
}

#[test]
fn header_declares_the_api() {
    let h = header();
    assert!(h.contains("#ifndef NUCOH_H"));
    assert!(h.contains("typedef struct NucohModel NucohModel;"));
    for name in [
        "nucoh_model_new_default",
        "nucoh_model_new",
        "nucoh_model_free",
        "nucoh_model_set_kind",
        "nucoh_model_set_mode",
        "nucoh_params_default",
        "nucoh_probability_row",
        "nucoh_vacuum_probability_row",
        "nucoh_averaged_probability_row",
        "nucoh_l1_from_probabilities",
        "nucoh_matter_lengths",
        "nucoh_resonance_potentials",
        "nucoh_infinite_coherence_potentials",
        "nucoh_last_error_message",
        "nucoh_version",
        "NUCOH_STATUS_OK = 0",
        "NUCOH_STATUS_PANIC = 8",
        "#define NUCOH_PAIR_32 2",
    ] {
        assert!(h.contains(name), "header lacks {name}");
    }
}

/// target/<profile> directory holding the static library.
fn profile_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_static_library() {
    let dir = profile_dir();
    // Test builds only produce the rlib.
    let mut build = Command::new(std::env::var("CARGO").unwrap_or_else(|_| "cargo".into()));
    build.args(["build", "-q", "-p", "nucoh-ffi", "--lib"]);
    if dir.file_name().is_some_and(|n| n == "release") {
        build.arg("--release");
    }
    assert!(build.status().expect("cargo runs").success());
    let lib = dir.join("libnucoh_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let status = Command::new("cc")
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&exe)
        .status()
        .expect("cc runs");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "smoke exited with {}", out.status);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with(env!("CARGO_PKG_VERSION")), "{text}");
}
