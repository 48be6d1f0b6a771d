// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero when any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/brute_force_dispatch.hpp"
#include "oracles/precise_kernels.hpp"
#include "rsm/adaptation.hpp"
#include "rsm/daily_pass.hpp"
#include "rsm/experiment.hpp"
#include "rsm/output.hpp"
#include "rsm/random.hpp"
#include "rsm/scenario_file.hpp"

using namespace rsm;
namespace fs = std::filesystem;

namespace {

const fs::path kDesk = fs::path(RSM_SCENARIO_DIR) / "desk.json";

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::size_t column(const std::string& name) {
    const auto& cols = DayLedger::value_columns();
    return static_cast<std::size_t>(std::find(cols.begin(), cols.end(), name) - cols.begin());
}

// ---------------------------------------------------------------------------

Verdict fixed_point() {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int states = 10000;
    long mismatches = 0;

    std::vector<TravelerAgent> pool(states);
    for (int i = 0; i < states; ++i) {
        LearningParams lp;
        for (std::size_t c = 0; c < kComponents; ++c) {
            lp.alpha[c] = 0.05 + 3.0 * unit(gen);
            lp.beta[c] = 0.1 + 4.0 * unit(gen);
        }
        AdaptiveState s;
        s.notified = gen() % 2;
        for (std::size_t c = 0; c < kComponents; ++c) {
            const double cap = lp.cu_max(static_cast<Component>(c));
            s.cu[c] = (2.0 * unit(gen) - 1.0) * cap;
        }
        for (std::size_t c = 0; c < kComponents; ++c) {
            const auto comp = static_cast<Component>(c);
            const double u = s.utility(comp, lp);
            const double ue = s.utility(Component::experience, lp);
            const double wage = 5.0 + 20.0 * unit(gen), shift = 1.0 + 8.0 * unit(gen);
            const double pt = 100.0 + 5000.0 * unit(gen);
            // each kernel's neutral input yields a zero delta
            const double zeros[] = {0.0, -0.0, wom_delta(u, u, unit(gen)), marketing_delta(1.0, unit(gen)),
                                    traveler_experience_delta(pt, pt),
                                    driver_experience_delta(wage, shift, wage * shift)};
            for (double z : zeros) {
                AdaptiveState t = s;
                t.cu[c] = update_component(t.cu[c], z, lp, comp);
                if (!(t == s) || t.utility(comp, lp) != u ||
                    t.utility(Component::experience, lp) != ue) {
                    ++mismatches;
                }
            }
        }
        pool[static_cast<std::size_t>(i)].id = i;
        pool[static_cast<std::size_t>(i)].pt_cost = 1000.0;
        pool[static_cast<std::size_t>(i)].adaptive = s;
    }

    // a whole adaptation pass with no campaign, no pairs and no participants
    AdaptationParams params;
    params.diffusion.p_wom = 0.0;
    auto after = pool;
    std::vector<DriverAgent> no_drivers;
    std::vector<std::optional<TripOutcome>> trips(after.size());
    DayExperience quiet{trips, {}, false};
    daily_adaptation_pass(after, no_drivers, quiet, params, 99, 3);
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (!(after[i].adaptive == pool[i].adaptive)) ++mismatches;
    }
    return {mismatches == 0,
            fmt("%d random states x 3 components x 6 zero deltas, plus a quiet pass: %ld changed",
                states, mismatches)};
}

Verdict s_shape() {
    LearningParams lp;
    bool ok = true;
    std::string detail;
    for (double delta : {-0.5, -0.1, 0.1, 0.5}) {
        std::vector<double> cus, steps;
        for (int k = -8000; k <= 8000; ++k) {
            const double cu = k / 1000.0;
            const double next = update_component(cu, delta, lp, Component::experience);
            cus.push_back(cu);
            steps.push_back(std::abs(sigmoid_utility(next, 1.0) - sigmoid_utility(cu, 1.0)));
        }
        const auto peak_it = std::max_element(steps.begin(), steps.end());
        const auto peak = static_cast<std::size_t>(peak_it - steps.begin());
        const double peak_cu = cus[peak];
        bool unimodal = true;
        const double noise = 1e-15;
        for (std::size_t i = 1; i <= peak; ++i) unimodal &= steps[i] + noise >= steps[i - 1];
        for (std::size_t i = peak + 1; i < steps.size(); ++i) unimodal &= steps[i] <= steps[i - 1] + noise;
        double tail = 0.0;
        for (std::size_t i = 0; i < steps.size(); ++i) {
            if (std::abs(cus[i]) >= 7.0) tail = std::max(tail, steps[i]);
        }
        const bool this_ok = unimodal && peak_cu >= -1.0 && peak_cu <= 1.0 && tail < 0.01 * *peak_it;
        ok &= this_ok;
        detail += fmt("%sdelta %+.1f: peak at cu %+.3f, tail/peak %.4f%s", detail.empty() ? "" : "; ",
                      delta, peak_cu, tail / *peak_it, unimodal ? "" : " (not unimodal)");
    }
    return {ok, detail};
}

Verdict oracle_equivalence() {
    std::mt19937_64 gen(77);
    auto pick = [&](int lo, int hi) { return lo + static_cast<int>(gen() % static_cast<unsigned>(hi - lo + 1)); };
    int mismatched = 0, served = 0, unserved = 0;
    for (int instance = 0; instance < 100; ++instance) {
        const int n = pick(2, 5);
        std::vector<Node> nodes;
        for (int i = 0; i < n * n; ++i) nodes.push_back({i, double(i % n), double(i / n)});
        std::vector<Edge> edges;
        const bool uniform = instance % 2 == 0;
        const double spacing = 10.0 * pick(30, 90);
        auto len = [&] { return uniform ? spacing : 10.0 * pick(20, 120); };
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                const int id = r * n + c;
                if (c + 1 < n) { edges.push_back({id, id + 1, len()}); edges.push_back({id + 1, id, len()}); }
                if (r + 1 < n) { edges.push_back({id, id + n, len()}); edges.push_back({id + n, id, len()}); }
            }
        NetworkGraph g(nodes, edges, 36.0);

        // every third instance is crowded: few drivers, requests bunched in ten minutes
        const bool crowded = instance % 3 == 0;
        const int nd = crowded ? pick(1, 2) : pick(1, 6), nt = crowded ? 6 : pick(1, 6);
        std::vector<DriverAgent> drivers;
        std::vector<std::int64_t> ids{3, 8, 1, 12, 5, 9};
        std::shuffle(ids.begin(), ids.end(), gen);
        for (int k = 0; k < nd; ++k) {
            DriverAgent d;
            d.id = ids[static_cast<std::size_t>(k)];
            d.start_node = pick(0, n * n - 1);
            d.reservation_wage = 10.63;
            d.operating_cost_km = 0.25;
            drivers.push_back(d);
        }
        const double day_length = 60.0 * pick(10, 60);
        const double patience = 60.0 * pick(2, 10);
        std::vector<TravelerAgent> travelers;
        std::vector<double> probs;
        for (int k = 0; k < nt; ++k) {
            TravelerAgent t;
            t.id = 100 - 7 * k;
            t.origin = pick(0, n * n - 1);
            do { t.destination = pick(0, n * n - 1); } while (t.destination == t.origin);
            t.departure_s = 60.0 * pick(0, crowded ? 9 : static_cast<int>(day_length / 60.0) - 1);
            t.pt_cost = 1000.0;
            travelers.push_back(t);
            probs.push_back((gen() % 100) / 100.0);
        }
        PlatformLevers levers;
        levers.commission = (gen() % 2) ? 0.1 : 0.5;
        levers.discount_rate = (gen() % 2) ? 0.4 : 0.0;
        DayParams params{day_length, patience};

        const auto got = run_day(g, travelers, probs, drivers, levers, params);
        const auto want = oracle::simulate_day(g, travelers, probs, drivers, levers, day_length, patience);
        if (got.trips != want.trips || got.drivers != want.drivers) ++mismatched;
        for (const auto& t : want.trips) (t.served ? served : unserved)++;
    }
    return {mismatched == 0, fmt("100 instances (%d served, %d unserved requests): %d differ", served,
                                 unserved, mismatched)};
}

Verdict awareness_gate() {
    std::vector<std::string> off;
    for (int s = 0; s < 6; ++s) off.push_back("platform.stages." + std::to_string(s) + ".marketing=false");
    auto sc = config::build(config::load(kDesk, off));
    auto res = run_replications(sc);
    long nonzero = 0;
    for (const auto& run : res.runs)
        for (const auto& d : run.ledger)
            if (d.demand_share != 0.0 || d.supply_share != 0.0 || d.served_share != 0.0) ++nonzero;
    return {nonzero == 0 && res.runs.front().ledger.size() == 400,
            fmt("%zu replications x 400 days without a campaign: %ld days with participation",
                res.runs.size(), nonzero)};
}

// Desk scenario replications with per-day checks against the raw trips.
struct DeskRun {
    std::vector<RunResult> runs;
    ReplicationSummary summary;
    long ledger_violations = 0;
    long kpi_violations = 0;
    double max_cross_error = 0.0;
    double min_fleet_margin = 1e300;
};

const DeskRun& desk_run() {
    static const DeskRun cached = [] {
        DeskRun out;
        auto sc = config::build(config::load(kDesk));
        const auto params = sc.effective_adaptation();
        const int pool = static_cast<int>(sc.travelers.size() + sc.drivers.size());
        for (int r = 0; r < sc.replications; ++r) {
            std::vector<DayResult> days;
            auto run = run_experiment(sc, replication_seed(sc.seed, static_cast<std::uint64_t>(r)),
                                      [&](int, const DayResult& d) { days.push_back(d); });
            double prev = 0.0;
            for (std::size_t i = 0; i < run.ledger.size(); ++i) {
                const auto& row = run.ledger[i];
                const auto& trips = days[i].trips;
                const auto& levers = sc.schedule.stage_for_day(row.day).levers;
                double commission = 0.0, discount = 0.0, gross = 0.0, paid = 0.0, revenue = 0.0;
                double wait = 0.0;
                std::size_t served = 0;
                for (const auto& t : trips) {
                    if (!t.served) continue;
                    ++served;
                    commission += t.gross_fare * levers.commission;
                    discount += t.gross_fare - t.fare_paid;
                    gross += t.gross_fare;
                    paid += t.fare_paid;
                    wait += t.waiting_time();
                }
                for (const auto& d : days[i].drivers) revenue += d.revenue;
                const double marketing = levers.marketing_active
                                             ? levers.marketing_cost_per_agent * pool * params.diffusion.p_marketing
                                             : 0.0;
                const auto& c = row.cash;
                const bool exact = c.commission_income == commission && c.discount_spend == discount &&
                                   c.marketing_spend == marketing &&
                                   c.net == c.commission_income - c.discount_spend - c.marketing_spend &&
                                   c.cumulative_net == prev + c.net;
                if (!exact) ++out.ledger_violations;
                prev = c.cumulative_net;
                // money paid in equals money paid out, up to summation order
                if (gross > 0.0) {
                    out.max_cross_error = std::max(
                        {out.max_cross_error, std::abs(paid + discount - gross) / gross,
                         std::abs(revenue + commission - gross) / gross});
                }

                bool kpi = row.mean_wait == row.mean_matching + row.mean_pickup && row.veh_km >= row.pax_km;
                if (served > 0) {
                    kpi &= std::abs(row.mean_wait - wait / double(served)) <= 1e-9 * std::max(1.0, row.mean_wait);
                } else {
                    kpi &= row.mean_wait == 0.0;
                }
                if (!kpi) ++out.kpi_violations;
                out.min_fleet_margin = std::min(out.min_fleet_margin, row.veh_km - row.pax_km);
            }
            out.runs.push_back(std::move(run));
        }
        out.summary = summarize(out.runs);
        return out;
    }();
    return cached;
}

double window_mean(const ReplicationSummary& s, std::size_t col, int from, int to) {
    double sum = 0.0;
    for (int d = from; d < to; ++d) sum += s.days[static_cast<std::size_t>(d)].mean[col];
    return sum / (to - from);
}

Verdict rise_and_fall() {
    const auto& s = desk_run().summary;
    const auto col = column("served_share");
    double early_max = 0.0;
    for (int d = 0; d < 50; ++d) early_max = std::max(early_max, s.days[d].mean[col]);
    const double d49 = s.days[49].mean[col];
    const double d100 = s.days[100].mean[col];
    const double iv_start = window_mean(s, col, 100, 110);
    const double iv_end = window_mean(s, col, 190, 200);
    const double v_mean = window_mean(s, col, 200, 300);
    const double vi_end = window_mean(s, col, 390, 400);
    const bool a = early_max < 0.02;
    const bool b = d100 > d49;
    const bool c = iv_end > iv_start;
    const bool d = v_mean >= 0.9 * iv_end;
    const bool e = vi_end <= 0.5 * v_mean;
    return {a && b && c && d && e,
            fmt("(a) max days 0-49 %.3f %s; (b) day 100 %.3f vs day 49 %.3f %s; (c) days 190-199 %.3f vs "
                "100-109 %.3f %s; (d) stage V %.3f vs 0.9 x %.3f %s; (e) days 390-399 %.3f vs 0.5 x %.3f %s",
                early_max, a ? "ok" : "FAIL", d100, d49, b ? "ok" : "FAIL", iv_end, iv_start,
                c ? "ok" : "FAIL", v_mean, iv_end, d ? "ok" : "FAIL", vi_end, v_mean, e ? "ok" : "FAIL")};
}

Verdict accounting() {
    const auto& desk = desk_run();

    // zero commission, zero discount, free awareness: trips happen but no money moves
    std::vector<std::string> zero;
    for (int s = 0; s < 6; ++s) {
        const auto k = "platform.stages." + std::to_string(s) + ".";
        zero.push_back(k + "commission=0");
        zero.push_back(k + "discount_rate=0");
        zero.push_back(k + "marketing_cost_per_agent=0");
    }
    zero.push_back("platform.stages.2.marketing=true");
    auto sc = config::build(config::load(kDesk, zero));
    auto res = run_replications(sc);
    long nonzero_net = 0;
    double served_days = 0.0;
    for (const auto& run : res.runs)
        for (const auto& d : run.ledger) {
            if (d.cash.net != 0.0 || d.cash.cumulative_net != 0.0) ++nonzero_net;
            if (d.served_share > 0.0) served_days += 1.0;
        }
    const bool ok = desk.ledger_violations == 0 && desk.max_cross_error <= 1e-12 && nonzero_net == 0 &&
                    served_days > 0.0;
    return {ok, fmt("desk run: %ld identity violations, max cross-side mismatch %.1e; zero-lever run: "
                    "%ld days with net != 0 over %.0f days with trips",
                    desk.ledger_violations, desk.max_cross_error, nonzero_net, served_days)};
}

Verdict kpi_structure() {
    const auto& desk = desk_run();
    return {desk.kpi_violations == 0,
            fmt("%zu runs x 400 days: %ld violations; smallest veh_km - pax_km %.3f km", desk.runs.size(),
                desk.kpi_violations, desk.min_fleet_margin)};
}

Verdict greed_profit() {
    const auto& s = desk_run().summary;
    const auto col = column("mean_driver_profit");
    const double rw_day = 10.63 * 4.0;
    int first = -1;
    for (int d = 300; d < 400; ++d) {
        if (s.days[d].mean[col] < rw_day) {
            first = d;
            break;
        }
    }
    const double before = window_mean(s, col, 290, 300);
    return {first >= 300 && first <= 320,
            fmt("mean profit days 290-299 %.2f; first day below %.2f is %d (profit %.2f)", before, rw_day,
                first, first >= 0 ? s.days[first].mean[col] : 0.0)};
}

Verdict determinism() {
    const auto base = fs::temp_directory_path() / "rsm_acceptance";
    fs::remove_all(base);
    auto run_into = [&](const fs::path& scenario, const fs::path& dir) {
        auto resolved = config::load(scenario);
        auto res = run_replications(config::build(resolved));
        output::write_run(dir, res);
        std::ofstream(dir / "manifest.json") << config::manifest(resolved).dump(2);
    };
    run_into(kDesk, base / "a");
    run_into(kDesk, base / "b");
    run_into(base / "a" / "manifest.json", base / "c");
    int compared = 0, differing = 0;
    for (const auto& entry : fs::directory_iterator(base / "a")) {
        const auto name = entry.path().filename();
        if (name.extension() != ".csv") continue;
        ++compared;
        const auto a = slurp(entry.path());
        if (a != slurp(base / "b" / name) || a != slurp(base / "c" / name)) ++differing;
    }
    const bool manifest_same = slurp(base / "a" / "manifest.json") == slurp(base / "c" / "manifest.json");
    return {compared > 0 && differing == 0 && manifest_same,
            fmt("%d CSV files compared across repeat and manifest re-run: %d differ; manifest %s", compared,
                differing, manifest_same ? "identical" : "differs")};
}

Verdict kernels() {
    std::mt19937_64 gen(1010);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    std::string worst_name = "none";
    auto track = [&](const char* name, double got, double want) {
        const double err = oracle::relative_error(got, want);
        if (err > worst) {
            worst = err;
            worst_name = name;
        }
    };
    for (int i = 0; i < 1000; ++i) {
        const double cu = -8.0 + 16.0 * unit(gen), beta = 0.1 + 4.9 * unit(gen);
        track("sigmoid", sigmoid_utility(cu, beta), oracle::sigmoid(cu, beta));

        const double u = unit(gen), alt = unit(gen), mu = 20.0 * unit(gen);
        track("logit", participation_probability(u, alt, mu, true), oracle::logit(u, alt, mu));

        const double wage = 5.0 + 25.0 * unit(gen), shift = 1.0 + 11.0 * unit(gen);
        const double income = -20.0 + 300.0 * unit(gen);
        track("driver delta", driver_experience_delta(wage, shift, income),
              oracle::driver_delta(wage, shift, income));

        const double pt = 60.0 + 7200.0 * unit(gen), rs = 60.0 + 7200.0 * unit(gen);
        track("traveler delta", traveler_experience_delta(pt, rs), oracle::traveler_delta(pt, rs));

        const double own = unit(gen), peer = unit(gen), p = unit(gen);
        track("wom delta", wom_delta(own, peer, p), oracle::wom_delta(own, peer, p));
        track("marketing delta", marketing_delta(own, p), oracle::marketing_delta(own, p));
    }
    return {worst <= 1e-12, fmt("6 kernels x 1000 points vs 50-digit evaluation: max relative error %.2e (%s)",
                                worst, worst_name.c_str())};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Verdict()> check;
    };
    const std::vector<Criterion> criteria{
        {1, "fixed-point exactness", fixed_point},
        {2, "S-shaped update step", s_shape},
        {3, "matching equals brute-force simulator", oracle_equivalence},
        {4, "awareness gate", awareness_gate},
        {5, "rise and fall of market share", rise_and_fall},
        {6, "accounting identities", accounting},
        {7, "KPI structure", kpi_structure},
        {8, "greed-stage driver profit", greed_profit},
        {9, "determinism and manifest re-run", determinism},
        {10, "closed-form kernel values", kernels},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %2d  %-40s %s [%.2fs]\n", v.pass ? "PASS" : "FAIL", c.id, c.name,
                    v.detail.c_str(), secs);
        std::fflush(stdout);
        if (!v.pass) ++failed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
