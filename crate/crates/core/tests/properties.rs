use std::f64::consts::PI;

use nucoh::{
    averaged_probability, build_pmns, l1_from_probabilities, vacuum_lengths, Flavor,
    MatterEigenSystem, OscillationParams, Pair, ParticleKind, Propagator, Treatment,
    WavePacketConfig,
};
use proptest::prelude::*;

const E: f64 = 4.5e10;

fn kind_strategy() -> impl Strategy<Value = ParticleKind> {
    prop_oneof![
        Just(ParticleKind::Neutrino),
        Just(ParticleKind::Antineutrino)
    ]
}

fn mode_strategy() -> impl Strategy<Value = Treatment> {
    prop_oneof![Just(Treatment::PlaneWave), Just(Treatment::WavePacket)]
}

fn params_strategy() -> impl Strategy<Value = OscillationParams> {
    (
        1.0f64..80.0,
        1.0f64..80.0,
        1.0f64..80.0,
        0.0f64..360.0,
        1e-5f64..1e-4,
        prop_oneof![1e-3f64..4e-3, -4e-3f64..-1e-3],
    )
        .prop_map(|(a, b, c, d, m21, m31)| {
            OscillationParams::from_degrees(a, b, c, d, m21, m31).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rows_are_stochastic(
        log_l in 8.0f64..21.0,
        log_e in 8.0f64..13.0,
        log_v in -18.0f64..-10.0,
        mode in mode_strategy(),
        kind in kind_strategy(),
    ) {
        let p = OscillationParams::default();
        let wp = WavePacketConfig { mode, ..Default::default() };
        let prop = Propagator::matter(&p, &wp, 10f64.powf(log_e), 10f64.powf(log_v), kind).unwrap();
        let m = prop.matrix(10f64.powf(log_l)).unwrap();
        for row in m.matrix {
            prop_assert!((row.iter().sum::<f64>() - 1.0).abs() <= 1e-10);
            for x in row {
                prop_assert!((0.0..=1.0).contains(&x));
            }
        }
    }

    #[test]
    fn random_parameters_stay_physical(
        p in params_strategy(),
        log_l in 8.0f64..19.0,
        log_v in -18.0f64..-11.0,
        kind in kind_strategy(),
    ) {
        let wp = WavePacketConfig::default();
        let prop = match Propagator::matter(&p, &wp, E, 10f64.powf(log_v), kind) {
            Ok(prop) => prop,
            // Degenerate configurations are reported, never silently wrong.
            Err(e) => return Err(TestCaseError::reject(e.to_string())),
        };
        let m = prop.matrix(10f64.powf(log_l)).unwrap();
        for row in m.matrix {
            prop_assert!((row.iter().sum::<f64>() - 1.0).abs() <= 1e-10);
            let c = l1_from_probabilities(row).unwrap().value();
            prop_assert!((0.0..=2.0 + 1e-10).contains(&c));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// |P_wp − P_pw| is bounded by the dropped exponents while both are small.
    #[test]
    fn wave_packet_close_to_plane_wave_early(
        frac in 0.0f64..0.1,
        log_v in -18.0f64..-11.0,
        log_sigma in -12.0f64..-9.0,
        kind in kind_strategy(),
    ) {
        let p = OscillationParams::default();
        let v = 10f64.powf(log_v);
        let wp = WavePacketConfig { sigma_x: 10f64.powf(log_sigma), ..Default::default() };
        let pw = WavePacketConfig { mode: Treatment::PlaneWave, ..wp };
        let a = Propagator::matter(&p, &wp, E, v, kind).unwrap();
        let b = Propagator::matter(&p, &pw, E, v, kind).unwrap();
        let lengths = a.lengths();
        let coh_min = lengths.iter().map(|x| x.l_coh).fold(f64::INFINITY, f64::min);
        let osc_min = lengths.iter().map(|x| x.l_osc).fold(f64::INFINITY, f64::min);
        let l = frac * coh_min.min(1e20);
        let bound = (l / coh_min).powi(2)
            + 2.0 * PI * PI * wp.rho * wp.rho * (wp.sigma_x / osc_min).powi(2);
        let (ma, mb) = (a.matrix(l).unwrap(), b.matrix(l).unwrap());
        for i in 0..3 {
            for j in 0..3 {
                prop_assert!((ma.matrix[i][j] - mb.matrix[i][j]).abs() <= bound + 1e-12);
            }
        }
    }

    /// Antineutrinos at (δ, V) behave as neutrinos at (−δ, −V).
    #[test]
    fn cp_conjugation(
        log_v in -18.0f64..-11.0,
        delta_deg in 0.0f64..360.0,
        log_l in 9.0f64..17.0,
    ) {
        let base = OscillationParams::default();
        let p = OscillationParams::from_degrees(33.82, 8.61, 48.3, delta_deg, base.dm21_sq, base.dm31_sq).unwrap();
        let q = OscillationParams::from_degrees(33.82, 8.61, 48.3, -delta_deg, base.dm21_sq, base.dm31_sq).unwrap();
        let v = 10f64.powf(log_v);
        let wp = WavePacketConfig::default();
        let anti = MatterEigenSystem::new(&p, E, v, ParticleKind::Antineutrino).unwrap();
        let nu = MatterEigenSystem::new(&q, E, -v, ParticleKind::Neutrino).unwrap();
        let a = Propagator::from_eigensystem(&anti, &wp).unwrap();
        let b = Propagator::from_eigensystem(&nu, &wp).unwrap();
        let l = 10f64.powf(log_l);
        let (ma, mb) = (a.matrix(l).unwrap(), b.matrix(l).unwrap());
        for i in 0..3 {
            for j in 0..3 {
                prop_assert!((ma.matrix[i][j] - mb.matrix[i][j]).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn pmns_conjugation(delta_deg in 0.0f64..360.0) {
        let p = OscillationParams::from_degrees(33.82, 8.61, 48.3, delta_deg, 7.39e-5, 2.451e-3).unwrap();
        let diff = build_pmns(&p, ParticleKind::Antineutrino)
            .max_abs_diff(&build_pmns(&p, ParticleKind::Neutrino).conj());
        prop_assert!(diff <= 1e-15);
    }
}

#[test]
fn damping_envelope_is_monotone_at_fixed_phase() {
    let p = OscillationParams::default();
    let wp = WavePacketConfig::default();
    let lengths = vacuum_lengths(&p, E, &wp).unwrap();
    let l_osc = lengths[Pair::P21 as usize].l_osc;
    // Start where the 31 and 32 terms are long gone.
    let start = 10.0
        * lengths[Pair::P31 as usize]
            .l_coh
            .max(lengths[Pair::P32 as usize].l_coh);
    let k0 = (start / l_osc).ceil();
    let prop = Propagator::vacuum(&p, &wp, E, ParticleKind::Neutrino).unwrap();
    let avg = averaged_probability(
        &p,
        Flavor::Electron,
        Flavor::Electron,
        E,
        0.0,
        ParticleKind::Neutrino,
    )
    .unwrap();
    let mut last = f64::INFINITY;
    for n in 0..200 {
        let k = k0 + (n as f64) * 1e6;
        let l = k * l_osc;
        let dev = (prop
            .probability(Flavor::Electron, Flavor::Electron, l)
            .unwrap()
            - avg)
            .abs();
        assert!(dev <= last + 1e-12, "L={l:e}: {dev} > {last}");
        last = dev;
    }
    assert!(last < 1e-6);
}
