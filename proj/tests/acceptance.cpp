// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one [PASS]/[FAIL] line per criterion. Exit code is the number of
// failed criteria.
//
// Criteria 4 and 8 include sub-checks that double precision cannot certify for
// the perturbed construction at r = 1 - p^-3 (the smallest relative Gram
// eigenvalues sit at 2e-17 for p = 5 and below 1e-29 for p >= 7, under the
// noise floor of 64-bit arithmetic). Those sub-checks run as stated and the
// failures are reported honestly; see README "Known certification limits".

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "asicpovm/constructions.hpp"

using namespace asicpovm;
using la::cplx;
using la::ComplexMatrix;

namespace {

int g_failures = 0;

struct Criterion {
    std::string name;
    double limit_seconds;
    std::vector<std::string> notes;
    bool ok = true;

    void check(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back(what);
        }
    }
};

void run(int number, const std::string& name, double limit_seconds,
         const std::function<void(Criterion&)>& body) {
    Criterion c{name, limit_seconds, {}, true};
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.notes.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > limit_seconds) {
        c.ok = false;
        c.notes.push_back("runtime " + std::to_string(secs) + "s exceeds " +
                          std::to_string(limit_seconds) + "s");
    }
    std::printf("[%s] criterion %d: %s (%.2fs)\n", c.ok ? "PASS" : "FAIL", number, name.c_str(),
                secs);
    for (const auto& n : c.notes) std::printf("       - %s\n", n.c_str());
    if (!c.ok) ++g_failures;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

VectorSystem intro_fixture() {
    VectorSystem sys;
    sys.dim = 2;
    sys.provenance.construction = "intro";
    sys.provenance.dim = 2;
    const double third = 1.0 / 3.0;
    sys.vectors = {
        {third * cplx(1, 0), third * cplx(2, 2)},
        {third * cplx(2, 2), third * cplx(1, 0)},
        {third * cplx(1, 0), third * cplx(-2, -2)},
        {third * cplx(2, 2), third * cplx(-1, 0)},
    };
    for (int i = 0; i < 4; ++i)
        sys.labels.push_back({"fiducial-orbit", {i + 1}});
    return sys;
}

double max_cross_overlap(const VectorSystem& sys) { return cross_basis_extremes(sys).max_abs; }

} // namespace

// ---------------------------------------------------------------------------

int main() {
    std::printf("acceptance suite\n================\n");

    // 1 ----------------------------------------------------------------------
    run(1, "two-dimensional worked example reproduces", 1.0, [](Criterion& c) {
        auto sys = intro_fixture();
        auto raw = raw_povm(sys);
        double comp = check_completeness(raw);
        c.check(comp <= 1e-12, "sum E - I residual " + fmt(comp));
        auto elems = raw.elements();
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                double t = (elems[i] * elems[j]).trace().real();
                bool in_set = std::abs(t - 4.0 / 81.0) <= 1e-12 ||
                              std::abs(t - 49.0 / 324.0) <= 1e-12;
                c.check(in_set, "tr(EiEj) = " + fmt(t) + " outside {4/81, 49/324}");
            }
        auto rc = check_informational_completeness(raw);
        c.check(rc.rank == 4, "gram rank " + std::to_string(rc.rank) + " != 4");
    });

    // 2 ----------------------------------------------------------------------
    run(2, "exact MUBs for q in {3,5,7,9,11,13,25,27}", 30.0, [](Criterion& c) {
        for (std::uint64_t q : {3ULL, 5ULL, 7ULL, 9ULL, 11ULL, 13ULL, 25ULL, 27ULL}) {
            auto sys = mub_prime_power(q);
            double ortho = 0.0;
            for (const auto& group : sys.basis_groups)
                for (std::size_t a = 0; a < group.size(); ++a)
                    for (std::size_t b = a + 1; b < group.size(); ++b)
                        ortho = std::max(ortho, std::abs(la::inner(sys.vectors[group[a]],
                                                                   sys.vectors[group[b]])));
            c.check(ortho <= 1e-10, "q=" + std::to_string(q) + " orthonormality " + fmt(ortho));
            double dev = check_unbiasedness(sys);
            c.check(dev <= 1e-10, "q=" + std::to_string(q) + " unbiasedness deviation " + fmt(dev));
        }
    });

    // 3 ----------------------------------------------------------------------
    run(3, "Construction I certification for q in {3,5,7,9,13}", 60.0, [](Criterion& c) {
        for (std::uint64_t q : {3ULL, 5ULL, 7ULL, 9ULL, 13ULL}) {
            std::string tag = "q=" + std::to_string(q) + " ";
            auto sys = asic_pruned_system(q);
            auto raw = raw_povm(sys);
            double g_res = (raw.frame_operator - asic_pruned_frame_expected(q)).frobenius_norm();
            c.check(g_res <= 1e-12, tag + "G-assembly residual " + fmt(g_res));
            double inv_res = (closed_form_G_inverse(q) * raw.frame_operator -
                              ComplexMatrix::identity(q))
                                 .frobenius_norm();
            c.check(inv_res <= 1e-12, tag + "closed-form inverse residual " + fmt(inv_res));
            auto povm = symmetrize_to_povm(sys);
            double comp = check_completeness(povm);
            c.check(comp <= 1e-10, tag + "sum F - I residual " + fmt(comp));
            auto rc = check_informational_completeness(povm);
            c.check(rc.rank == q * q,
                    tag + "gram rank " + std::to_string(rc.rank) + " != " + std::to_string(q * q));
            auto stats = overlap_stats(povm);
            double bound = construction1_overlap_bound(q);
            c.check(stats.max_sq <= bound * (1.0 + 1e-12),
                    tag + "max q^2 tr(FiFj) = " + fmt(stats.max_sq) + " > bound " + fmt(bound));
        }
    });

    // 4 ----------------------------------------------------------------------
    run(4, "Construction II certification for p in {3,5,7,11,13}", 60.0, [](Criterion& c) {
        // thresholds frozen from the pre-build brute-force run (+0.2% headroom)
        const std::map<std::uint64_t, double> frozen_max_sq = {
            {3, 0.3482}, {5, 0.2114}, {7, 0.1508}, {11, 0.0963}, {13, 0.0810}};
        for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
            std::string tag = "p=" + std::to_string(p) + " ";
            const double r = asic_perturbed_default_r(p);
            auto sys = asic_perturbed_system(p, r);
            auto raw = raw_povm(sys);
            auto diag = perturbed_frame_diag(p, r);
            double offdiag = 0.0, diag_res = 0.0;
            for (std::uint64_t i = 0; i < p; ++i)
                for (std::uint64_t j = 0; j < p; ++j) {
                    if (i == j)
                        diag_res = std::max(diag_res,
                                            std::abs(raw.frame_operator(i, j) - cplx(diag[i], 0)));
                    else
                        offdiag = std::max(offdiag, std::abs(raw.frame_operator(i, j)));
                }
            c.check(offdiag <= 1e-12, tag + "off-diagonal G mass " + fmt(offdiag));
            c.check(diag_res <= 1e-12, tag + "G diagonal mismatch " + fmt(diag_res));

            auto povm = symmetrize_to_povm(sys);
            double comp = check_completeness(povm);
            c.check(comp <= 1e-10, tag + "sum F - I residual " + fmt(comp));

            auto rc = check_informational_completeness(povm);
            c.check(rc.rank == p * p, tag + "gram rank " + std::to_string(rc.rank) + " != " +
                                          std::to_string(p * p) +
                                          " (sub-noise spectrum at double precision)");

            auto stats = overlap_stats(povm);
            c.check(stats.max_sq <= frozen_max_sq.at(p),
                    tag + "max squared overlap " + fmt(stats.max_sq) + " > frozen " +
                        fmt(frozen_max_sq.at(p)));
            if (p >= 7) {
                double trend = stats.max_sq * static_cast<double>(p);
                c.check(trend >= 0.5 && trend <= 1.6, tag + "max^2 * p = " + fmt(trend));
            }
        }
    });

    // 5 ----------------------------------------------------------------------
    run(5, "polynomial AMUBs for n in {4,6,10,12}, d in {1,2}", 120.0, [](Criterion& c) {
        // constants frozen from the pre-build run: worst observed ratio of the
        // max cross overlap to n^{-1/3} (d=1) resp. n^{-1/4} (d=2)
        const double c1 = 1.29, c2 = 1.42;
        for (std::uint64_t n : {4ULL, 6ULL, 10ULL, 12ULL}) {
            for (std::uint64_t d : {1ULL, 2ULL}) {
                std::string tag = "n=" + std::to_string(n) + " d=" + std::to_string(d) + " ";
                auto sys = amub_polynomial(n, d);
                double ortho = 0.0;
                for (const auto& group : sys.basis_groups)
                    for (std::size_t a = 0; a < group.size(); ++a)
                        for (std::size_t b = a + 1; b < group.size(); ++b)
                            ortho = std::max(ortho, std::abs(la::inner(sys.vectors[group[a]],
                                                                       sys.vectors[group[b]])));
                c.check(ortho <= 1e-10, tag + "orthonormality " + fmt(ortho));

                const double ref = 1.0 / std::sqrt(static_cast<double>(n));
                auto gid = std::vector<std::size_t>(sys.size(), 0);
                for (std::size_t g = 0; g < sys.basis_groups.size(); ++g)
                    for (std::size_t i : sys.basis_groups[g]) gid[i] = g;
                double std_dev = 0.0;
                for (std::size_t i : sys.basis_groups[0])
                    for (std::size_t j = 0; j < sys.size(); ++j) {
                        if (gid[j] == 0) continue;
                        std_dev = std::max(std_dev,
                                           std::abs(std::abs(la::inner(sys.vectors[i],
                                                                       sys.vectors[j])) -
                                                    ref));
                    }
                c.check(std_dev <= 1e-12, tag + "standard-basis overlap deviation " + fmt(std_dev));

                double mx = max_cross_overlap(sys);
                double cap = (d == 1 ? c1 * std::pow(static_cast<double>(n), -1.0 / 3.0)
                                     : c2 * std::pow(static_cast<double>(n), -0.25));
                c.check(mx <= cap, tag + "max cross overlap " + fmt(mx) + " > " + fmt(cap));
            }
        }
    });

    // 6 ----------------------------------------------------------------------
    run(6, "approximate-SIC systems for n in {7,8,11,12,13}", 60.0, [](Criterion& c) {
        // per-n maxima frozen from the pre-build run (+0.1% headroom); for the
        // prime n (h = 0) the 2 n^{-1/2} bound itself also holds
        const std::map<std::uint64_t, double> frozen = {
            {7, 0.6780}, {8, 0.7980}, {11, 0.5356}, {12, 0.6634}, {13, 0.5354}};
        for (auto [n, cap] : frozen) {
            std::string tag = "n=" + std::to_string(n) + " ";
            auto sys = approx_sic_vectors(n);
            auto stats = overlap_stats(sys);
            double mx = std::sqrt(stats.max_sq);
            c.check(mx <= cap, tag + "max overlap " + fmt(mx) + " > frozen " + fmt(cap));
            if (n == 7 || n == 11 || n == 13)
                c.check(mx <= 2.0 / std::sqrt(static_cast<double>(n)) + 1e-9,
                        tag + "max overlap " + fmt(mx) + " > 2 n^{-1/2}");
        }
    });

    // 7 ----------------------------------------------------------------------
    run(7, "character AMUB hard bound for (n,d) in {(4,1),(6,1),(10,1),(12,1),(6,2)}", 60.0,
        [](Criterion& c) {
            for (auto [n, d] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
                     {4, 1}, {6, 1}, {10, 1}, {12, 1}, {6, 2}}) {
                std::string tag = "n=" + std::to_string(n) + " d=" + std::to_string(d) + " ";
                auto sys = amub_character(n, d);
                double bound = static_cast<double>(d) *
                               std::sqrt(static_cast<double>(sys.provenance.p)) /
                               static_cast<double>(n);
                double mx = max_cross_overlap(sys);
                c.check(mx <= bound * (1.0 + 1e-12) + 1e-15,
                        tag + "max cross overlap " + fmt(mx) + " > d sqrt(p)/n = " + fmt(bound));
                double ortho = 0.0;
                for (const auto& group : sys.basis_groups)
                    for (std::size_t a = 0; a < group.size(); ++a)
                        for (std::size_t b = a + 1; b < group.size(); ++b)
                            ortho = std::max(ortho, std::abs(la::inner(sys.vectors[group[a]],
                                                                       sys.vectors[group[b]])));
                c.check(ortho <= 1e-10, tag + "orthonormality " + fmt(ortho));
            }
        });

    // 8 ----------------------------------------------------------------------
    run(8, "tomography round trip for the POVMs of criteria 1, 3, 4", 30.0, [](Criterion& c) {
        std::vector<std::pair<std::string, ProjectorPOVM>> povms;
        povms.emplace_back("intro", symmetrize_to_povm(intro_fixture()));
        for (std::uint64_t q : {3ULL, 5ULL, 7ULL, 9ULL, 13ULL})
            povms.emplace_back("asic1 q=" + std::to_string(q), asic_pruned(q));
        for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL})
            povms.emplace_back("asic2 p=" + std::to_string(p), asic_perturbed(p));
        for (const auto& [name, povm] : povms) {
            try {
                double err = tomography_roundtrip_error(povm, 20, 0);
                c.check(err <= 1e-8, name + ": round-trip error " + fmt(err));
            } catch (const std::domain_error& e) {
                c.check(false, name + ": " + e.what());
            }
        }
    });

    // 9 ----------------------------------------------------------------------
    run(9, "Weil bound sweep p <= 61, monic deg <= 4, all character orders", 60.0,
        [](Criterion& c) {
            auto res = weil_exhaustive_sweep(61, 4);
            c.check(res.violations == 0,
                    std::to_string(res.violations) + " violations in " +
                        std::to_string(res.sums_checked) + " sums");
            c.check(res.worst_ratio <= 1.0 + 1e-12, "worst ratio " + fmt(res.worst_ratio));
        });

    // 10 ---------------------------------------------------------------------
    run(10, "special bound at alpha = 1/(n+1) equals n^2 exactly, n = 2..100", 1.0,
        [](Criterion& c) {
            for (std::uint64_t n = 2; n <= 100; ++n) {
                double k = special_bound(n, 1, n + 1);
                c.check(k == static_cast<double>(n * n),
                        "n=" + std::to_string(n) + ": " + fmt(k) + " != n^2");
            }
        });

    std::printf("================\n%d of 10 criteria failed\n", g_failures);
    return g_failures;
}
