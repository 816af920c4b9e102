use proptest::prelude::*;

use tournaplex::complex::{directed_flag_complex, flag_tournaplex, Tournament};
use tournaplex::digraph::Digraph;
use tournaplex::directionality::{c3, identity_check, local_directionality, w_c3, w_dr, WeightFunction};
use tournaplex::persistence::{barcode, betti_numbers};
use tournaplex::pipeline::{adjusted_rand_index, kmeans};

fn digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let edges = (0..n)
                .flat_map(|u| (0..n).map(move |v| (u, v)))
                .filter(|&(u, v)| u != v && bits[u * n + v]);
            Digraph::new(n, edges).unwrap()
        })
    })
}

fn tournament(max_n: usize) -> impl Strategy<Value = Tournament> {
    (1..=max_n).prop_flat_map(|n| {
        any::<u128>().prop_map(move |m| {
            let pairs = n * (n - 1) / 2;
            let mask = if pairs == 0 { 0 } else { m & ((1u128 << pairs) - 1) };
            Tournament::from_mask(n, mask).unwrap()
        })
    })
}

fn relabel(g: &Digraph, perm: &[usize]) -> Digraph {
    Digraph::new(g.vertex_count(), g.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn flag_tournaplex_is_closed_and_counts_orientations(g in digraph(7)) {
        let k = flag_tournaplex(&g, 8);
        prop_assert!(k.is_face_closed());
        let counts = k.counts();
        prop_assert_eq!(counts[0], g.vertex_count());
        let undirected = g.edges().filter(|&(u, v)| u < v || !g.has_edge(v, u)).count();
        let expected_edges = undirected + g.reciprocal_pair_count();
        prop_assert_eq!(counts.get(1).copied().unwrap_or(0), expected_edges);
        prop_assert_eq!(k.one_skeleton(), g.clone());
    }

    #[test]
    fn directed_flag_complex_is_transitive_part(g in digraph(7)) {
        let k = flag_tournaplex(&g, 8);
        prop_assert_eq!(directed_flag_complex(&g, 8), k.transitive_part());
    }

    #[test]
    fn identity_holds(t in tournament(12)) {
        prop_assert!(identity_check(&t));
        let n = t.order() as u64;
        prop_assert_eq!(local_directionality(&t) + 8 * c3(&t), n * (n + 1) * (n - 1) / 3);
    }

    #[test]
    fn weights_are_monotone_on_faces(t in tournament(9)) {
        for f in t.faces() {
            prop_assert!(w_dr(&f) <= w_dr(&t));
            prop_assert!(w_c3(&f) <= w_c3(&t));
        }
    }

    #[test]
    fn signed_degrees_sum_to_zero(g in digraph(10), t in tournament(10)) {
        prop_assert_eq!(g.signed_degrees().iter().sum::<i64>(), 0);
        prop_assert_eq!(t.signed_degrees().iter().sum::<i64>(), 0);
    }

    #[test]
    fn relabelling_preserves_homology(g in digraph(6), seed in any::<u64>()) {
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = relabel(&g, &perm);
        let (kg, kh) = (flag_tournaplex(&g, 8), flag_tournaplex(&h, 8));
        prop_assert_eq!(kg.counts(), kh.counts());
        prop_assert_eq!(betti_numbers(&kg), betti_numbers(&kh));
        let w = WeightFunction::LocalDirectionality;
        prop_assert_eq!(barcode(&kg, &w).unwrap().pairs, barcode(&kh, &w).unwrap().pairs);
    }

    #[test]
    fn kmeans_ignores_column_scale(
        rows in proptest::collection::vec(proptest::collection::vec(-50i32..50, 3), 6..20),
        scale in 1u32..1000,
    ) {
        let data: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
        let scaled: Vec<Vec<f64>> = data
            .iter()
            .map(|r| vec![r[0] * scale as f64, r[1], r[2] + 17.0])
            .collect();
        let a = kmeans(&data, 3, 11, 5).unwrap();
        let b = kmeans(&scaled, 3, 11, 5).unwrap();
        prop_assert!((a.wcss - b.wcss).abs() <= 1e-6 * a.wcss.max(1.0));
        if let Some(ari) = adjusted_rand_index(&a.labels, &b.labels).unwrap() {
            prop_assert!(ari > 0.999);
        }
    }
}
