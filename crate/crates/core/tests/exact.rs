mod common;

use std::collections::HashSet;
use std::time::Duration;

use common::*;
use oscm_gaps::exact::{
    brute_force_oracle, build_kgap_model, build_unrestricted_model, export_model, import_model,
    solve_branch_and_bound, solve_exact_kgaps, solve_exact_sidegaps, solve_exact_unrestricted,
    OracleMode, SolveStatus, Var,
};
use oscm_gaps::{count_crossings, count_gaps, pairwise_crossings, Error, NodeId};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const BUDGET: Duration = Duration::from_secs(30);

#[test]
fn solver_matches_oracle_on_small_instances() {
    for inst in small_corpus(&[4, 6, 8], 2) {
        let (_, unrestricted) = brute_force_oracle(&inst, OracleMode::Unrestricted).unwrap();
        let r = solve_exact_unrestricted(&inst, BUDGET).unwrap();
        assert_eq!(r.status, SolveStatus::Optimal);
        assert_eq!(r.objective, Some(unrestricted));

        let (_, side) = brute_force_oracle(&inst, OracleMode::SideGap).unwrap();
        assert_eq!(solve_exact_sidegaps(&inst, BUDGET).unwrap().objective, Some(side));

        for k in 1..=3 {
            let (_, opt) = brute_force_oracle(&inst, OracleMode::KGap(k)).unwrap();
            let model = build_kgap_model(&inst, k).unwrap();
            let r = solve_branch_and_bound(&model, BUDGET);
            assert_eq!(r.status, SolveStatus::Optimal);
            assert_eq!(r.objective, Some(opt));
            let p = r.permutation.unwrap();
            assert_eq!(count_crossings(&inst, &p).unwrap(), opt);
            assert!(count_gaps(&inst, &p).count <= k);
        }
    }
}

#[test]
fn objective_never_below_pairwise_minimum() {
    for seed in 0..30 {
        let inst = instance(9, 0.3, 3.0, seed);
        let c = pairwise_crossings(&inst);
        let mut floor = 0;
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                floor += c.at(i, j).min(c.at(j, i));
            }
        }
        let r = solve_branch_and_bound(&build_unrestricted_model(&inst), BUDGET);
        assert!(r.objective.unwrap() >= floor);
        let r = solve_exact_kgaps(&inst, 1, BUDGET).unwrap();
        assert!(r.objective.unwrap() >= floor);
    }
}

#[test]
fn oracle_nesting() {
    for seed in 0..20 {
        let inst = instance(7, 0.45, 2.0, seed);
        let dm = inst.dummy_top_ids().count();
        let (_, k1) = brute_force_oracle(&inst, OracleMode::KGap(1)).unwrap();
        let (_, kall) = brute_force_oracle(&inst, OracleMode::KGap(dm.max(1))).unwrap();
        let (_, free) = brute_force_oracle(&inst, OracleMode::Unrestricted).unwrap();
        assert!(kall <= k1);
        assert_eq!(kall, free);

        let no_dummies = instance(7, 0.0, 2.0, seed);
        assert_eq!(
            brute_force_oracle(&no_dummies, OracleMode::SideGap).unwrap(),
            brute_force_oracle(&no_dummies, OracleMode::Unrestricted).unwrap()
        );
    }
}

#[test]
fn oracle_refuses_large_instances() {
    let inst = instance(10, 0.2, 2.0, 1);
    assert!(matches!(
        brute_force_oracle(&inst, OracleMode::Unrestricted),
        Err(Error::OracleTooLarge { size: 10, limit: 9 })
    ));
}

/// Frozen output of the enumeration for a fixed instance.
#[test]
fn oracle_regression_fixture() {
    let inst = instance(6, 0.3, 2.0, 7);
    let got: Vec<(String, Vec<u32>, u64)> = [OracleMode::Unrestricted, OracleMode::SideGap, OracleMode::KGap(1)]
        .into_iter()
        .map(|m| {
            let (p, c) = brute_force_oracle(&inst, m).unwrap();
            (m.to_string(), p.iter().map(|id| id.0).collect(), c)
        })
        .collect();
    let expected: Vec<(String, Vec<u32>, u64)> = vec![
        ("unrestricted".into(), vec![11, 6, 10, 8, 9, 7], 7),
        ("sidegap".into(), vec![11, 6, 10, 8, 9, 7], 7),
        ("kgap(1)".into(), vec![11, 6, 10, 8, 9, 7], 7),
    ];
    assert_eq!(got, expected);
}

#[test]
fn feasible_assignments_decode_to_valid_orders() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for seed in 0..25 {
        let inst = instance(7, 0.45, 2.0, seed);
        let k = 1 + (seed % 3) as usize;
        let model = build_kgap_model(&inst, k).unwrap();
        let dummy_set: HashSet<NodeId> = inst.dummy_top_ids().collect();
        let canon = oscm_gaps::canonical_dummy_order(&inst).unwrap();
        let mut ids: Vec<NodeId> = inst.top_ids().collect();
        let mut feasible = 0;
        for _ in 0..200 {
            ids.shuffle(&mut rng);
            let p = perm(ids.clone());
            let a = model.encode(&p).unwrap();
            let ok = model.is_feasible(&a);
            let expect = oscm_gaps::induced(&p, &dummy_set) == canon.order
                && count_gaps(&inst, &p).count <= k;
            // a lone dummy is unconstrained by the model
            if dummy_set.len() >= 2 {
                assert_eq!(ok, expect, "seed {seed}");
            }
            if !ok {
                continue;
            }
            feasible += 1;
            let decoded = model.decode(&a).unwrap();
            assert_eq!(decoded, p);
            assert_eq!(oscm_gaps::induced(&decoded, &dummy_set), canon.order);
            let gsum: i64 = model.g_vars().iter().map(|&g| a.get(g)).sum();
            let gaps = count_gaps(&inst, &decoded).count as i64;
            assert!(gaps <= gsum + 1 && gsum < k as i64);
            for (u, v) in model.chain_pairs() {
                let (pu, pv) = (decoded.position(u).unwrap(), decoded.position(v).unwrap());
                let real_between = decoded.order()[pu + 1..pv].iter().any(|w| !dummy_set.contains(w));
                if real_between {
                    assert_eq!(a.get(Var::G(u, v)), 1);
                }
            }
            assert_eq!(model.objective_value(&a), count_crossings(&inst, &decoded).unwrap());
        }
        assert!(feasible > 0, "seed {seed}");
    }
}

#[test]
fn transitivity_forbids_three_cycles() {
    let inst = instance(3, 0.0, 2.0, 4);
    let model = build_unrestricted_model(&inst);
    assert_eq!(model.transitivity_constraints().len(), 6);
    let ids: Vec<NodeId> = inst.top_ids().collect();
    let mut a = model.encode(&perm(ids.clone())).unwrap();
    // turn a < b < c into the cycle a < b < c < a
    a.0.insert(Var::X(ids[0], ids[2]), 0);
    a.0.insert(Var::X(ids[2], ids[0]), 1);
    assert!(!model.is_feasible(&a));
    assert!(model.decode(&a).is_err());
}

#[test]
fn exported_model_round_trips() {
    let inst = instance(5, 0.4, 2.0, 3);
    assert_eq!(inst.top().len(), 5);
    let model = build_kgap_model(&inst, 2).unwrap();
    let text = export_model(&model);
    assert_eq!(import_model(&text).unwrap(), model);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["vars"].as_array().unwrap().len(), 20 + model.g_vars().len());
}

#[test]
fn timeout_still_returns_feasible_incumbent() {
    let inst = instance(40, 0.2, 3.0, 1);
    let r = solve_exact_kgaps(&inst, 2, Duration::from_millis(50)).unwrap();
    let p = r.permutation.expect("seeded incumbent");
    assert!(count_gaps(&inst, &p).count <= 2);
    assert_eq!(r.objective, Some(count_crossings(&inst, &p).unwrap()));
    if r.status != SolveStatus::Optimal {
        assert_eq!(r.status, SolveStatus::TimeoutIncumbent);
    }
}
