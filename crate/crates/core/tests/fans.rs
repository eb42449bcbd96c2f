use hzcolor::fans::{build_lollipop, check_typical, grow_hz_multifan, normalize_typical, FanError};
use hzcolor::graph::Bits;
use hzcolor::verify::coloring_without;
use hzcolor::*;

fn family(delta: usize) -> Vec<Graph> {
    OdeltaParams::all_up_to(delta)
        .into_iter()
        .filter(|p| p.delta == delta)
        .map(|p| gen_odelta(&p).unwrap())
        .collect()
}

/// Every `(r, s_1)` with `r ∈ V_Δ`, `s_1 ∈ N_{Δ−1}(r)`, paired with a
/// `Δ`-coloring of `G − r s_1`.
fn instances(g: &Graph) -> Vec<(Vertex, Vertex, PartialEdgeColoring<'_>)> {
    let delta = g.max_degree();
    let mut out = Vec::new();
    for r in Bits(g.degree_class(delta)) {
        for s in Bits(g.neighbors_of_degree(r, delta - 1)) {
            let e = g.edge_id(r, s).unwrap();
            let colors = coloring_without(g, e, &CheckConfig::default())
                .unwrap()
                .expect("G − e is Class 1");
            out.push((
                r,
                s,
                PartialEdgeColoring::from_colors(g, delta, &colors).unwrap(),
            ));
        }
    }
    out
}

#[test]
fn fans_in_the_family_normalize_to_typical() {
    let mut seen = 0;
    for delta in [4, 5, 6] {
        for g in family(delta) {
            for (r, s, pc) in instances(&g) {
                let fan = grow_hz_multifan(&pc, r, s).unwrap();
                let (t, out) = normalize_typical(&fan, &pc).unwrap();
                check_typical(&out, &t).unwrap();
                assert_eq!(t.replay(&pc).unwrap(), out);
                let mut before = fan.vertices();
                let mut after = t.fan.vertices();
                before.sort_unstable();
                after.sort_unstable();
                assert_eq!(before, after);
                assert!(t.one_sequence());
                seen += 1;
            }
        }
    }
    assert!(seen > 0);
}

#[test]
fn lollipops_over_every_pair_in_o6() {
    let (mut built, mut rejected) = (0, 0);
    for g in family(6) {
        let delta = g.max_degree();
        for (r, s, pc) in instances(&g).into_iter().take(4) {
            let fan = grow_hz_multifan(&pc, r, s).unwrap();
            let (t, pc) = normalize_typical(&fan, &pc).unwrap();
            for u in Bits(g.neighbors_of_degree(r, delta)) {
                for x in Bits(g.neighbors_of_degree(u, delta - 1)) {
                    match build_lollipop(&pc, &t, u, x) {
                        Ok(l) => {
                            built += 1;
                            assert!(!t.fan.leaves.contains(&x));
                            assert_eq!(Some(l.color_ru), pc.color_of(r, u));
                            assert_eq!(Some(l.color_ux), pc.color_of(u, x));
                            assert_eq!(l.ru_is_alpha_plus_one, l.color_ru as usize == t.alpha + 1);
                            assert_eq!(
                                l.x_misses_alpha_plus_one,
                                l.missing_x.contains(&(t.alpha as Color + 1))
                            );
                        }
                        Err(FanError::PreconditionFailed(_)) => {
                            rejected += 1;
                            assert!(x == r || t.fan.leaves.contains(&x));
                        }
                        Err(e) => panic!("unexpected {e}"),
                    }
                }
            }
            // u outside N_Δ(r)
            assert!(build_lollipop(&pc, &t, s, r).is_err());
        }
    }
    eprintln!("lollipops built {built}, rejected {rejected}");
    assert!(built > 0 && rejected > 0);
}
