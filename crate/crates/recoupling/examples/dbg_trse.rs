// characterize dpsa/dpsb failures: territory predicate candidates
use recoupling::qarith::engine::*;
use recoupling::sixj::ha;
use recoupling::twelvej::*;
fn main() {
    let eng = q_one_engine();
    let mut unsound = [0usize; 2];
    let mut conserv = [0usize; 2];
    let mut uncovered = 0;
    for mt in [2i64, 3] {
        for t in first::twelvej1_labels(mt) {
            let (oracle, _) = twelvej1_expand_in(&eng, &t, V1ExpandVariant::Dvpja);
            let [j1, j2, j3, j4] = t.j;
            let [l1, l2, l3, l4] = t.l;
            let [k1, k2, k3, k4] = t.k;
            // dpsa: joint-decreasing num args: [j1+k1+k2+k4-l1-l4-z4-u]!,
            // [2j1-k1+k2-l1-u]! and the u-window interplay; characteristic:
            // contributing (z4, u) must keep them nonneg. u ranges over
            // -z1..; take max feasible u from den args:
            let z4a = ha(k1 + j4 - l4).min(ha(j4 + l4 - k1) + 0).min(l4);
            // u_max from dens [j1+k4-l4-z1-z4-u]! at z1=0,z4=0 and
            // [j1-j3-l1+l2+z2-u]! at z2max
            let z2a = ha(j2 + j3 - l2).min(ha(k2 + k3 - l2));
            let uma = ha(j1 + k4 - l4).max(ha(j1 - j3 - l1 + l2) + z2a);
            let pa = uma + 0 <= ha(2 * j1 - k1 + k2 - l1).max(-1).max(ha(j1 + k1 + k2 + k4 - l1 - l4) - 0)
                && uma <= ha(2 * j1 - k1 + k2 - l1)
                && z4a + uma <= ha(j1 + k1 + k2 + k4 - l1 - l4);
            // dpsb analogous
            let z4b = ha(k1 + l4 - j4).min(l4);
            let z2b = ha(l2 + k2 - k3).min(ha(j2 - j3 + l2)).min(l2);
            let umb = ha(j1 - k4 + l4).max(ha(j1 + j3 - l1 - l2) + z2b);
            let pb = umb <= ha(2 * j1 - k1 + k2 - l1)
                && z4b + umb <= ha(j1 + k1 + k2 - k4 - l1 + l4);
            let valid = [pa, pb];
            if !valid.iter().any(|&x| x) { uncovered += 1; }
            for (i, f) in FiveSumFormula::ALL.into_iter().enumerate() {
                let (w, _) = twelvej1_fivesum_in(&eng, &t, f);
                let fail = !w.equal(&eng, &oracle);
                if valid[i] && fail { unsound[i] += 1; }
                if !valid[i] && !fail { conserv[i] += 1; }
            }
        }
    }
    println!("unsound {:?} conservative {:?} uncovered {}", unsound, conserv, uncovered);
}
