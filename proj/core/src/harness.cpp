#include "ffgrowth/harness.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ffgrowth/errors.hpp"
#include "ffgrowth/heis.hpp"
#include "ffgrowth/incidence.hpp"
#include "ffgrowth/matgrp.hpp"
#include "ffgrowth/rng.hpp"
#include "ffgrowth/setalg.hpp"

#include "json.hpp"

namespace ffgrowth {

namespace {

using ojson = nlohmann::ordered_json;

std::string double_text(double d) {
    std::array<char, 64> buf;
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), d);
    (void)ec;
    return std::string(buf.data(), ptr);
}

u64 parse_u64_field(const ojson& v, const std::string& key) {
    if (v.is_string()) {
        const std::string& s = v.get_ref<const std::string&>();
        u128 wide = parse_decimal_u128(s);
        if (wide > ~u64(0)) {
            throw std::invalid_argument("config: " + key + " out of range");
        }
        return static_cast<u64>(wide);
    }
    if (v.is_number_unsigned()) return v.get<u64>();
    if (v.is_number_integer()) {
        long long x = v.get<long long>();
        if (x < 0) throw std::invalid_argument("config: " + key + " is negative");
        return static_cast<u64>(x);
    }
    throw std::invalid_argument("config: " + key + " must be an integer");
}

} // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::uniform_random: return "uniform_random";
        case Family::interval: return "interval";
        case Family::arithmetic_progression: return "arithmetic_progression";
        case Family::geometric_progression: return "geometric_progression";
        case Family::multiplicative_subgroup: return "multiplicative_subgroup";
        case Family::subfield_coset: return "subfield_coset";
    }
    throw std::logic_error("unreachable");
}

Family family_from_name(const std::string& s) {
    for (Family f : {Family::uniform_random, Family::interval,
                     Family::arithmetic_progression,
                     Family::geometric_progression,
                     Family::multiplicative_subgroup, Family::subfield_coset}) {
        if (family_name(f) == s) return f;
    }
    throw std::invalid_argument("unknown family: " + s);
}

std::string experiment_name(Experiment e) {
    switch (e) {
        case Experiment::sl2_product: return "sl2_product";
        case Experiment::heis2_zero: return "heis2_zero";
        case Experiment::heis2_full: return "heis2_full";
        case Experiment::heis1: return "heis1";
        case Experiment::energies: return "energies";
        case Experiment::incidence: return "incidence";
        case Experiment::inequalities: return "inequalities";
    }
    throw std::logic_error("unreachable");
}

Experiment experiment_from_name(const std::string& s) {
    for (Experiment e :
         {Experiment::sl2_product, Experiment::heis2_zero,
          Experiment::heis2_full, Experiment::heis1, Experiment::energies,
          Experiment::incidence, Experiment::inequalities}) {
        if (experiment_name(e) == s) return e;
    }
    throw std::invalid_argument("unknown experiment: " + s);
}

ExperimentConfig parse_config(const std::string& json_text) {
    ojson j;
    try {
        j = ojson::parse(json_text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config: not valid JSON: ") +
                                    e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config: not an object");

    ExperimentConfig cfg;
    if (!j.contains("p")) throw std::invalid_argument("config: p is required");
    cfg.p = parse_u64_field(j.at("p"), "p");
    if (j.contains("n")) {
        cfg.n = static_cast<unsigned>(parse_u64_field(j.at("n"), "n"));
    }
    if (j.contains("family")) {
        cfg.family = family_from_name(j.at("family").get<std::string>());
    }
    if (!j.contains("experiment")) {
        throw std::invalid_argument("config: experiment is required");
    }
    cfg.experiment = experiment_from_name(j.at("experiment").get<std::string>());
    if (!j.contains("sizes") || !j.at("sizes").is_array() ||
        j.at("sizes").empty()) {
        throw std::invalid_argument("config: sizes must be a nonempty array");
    }
    for (const auto& s : j.at("sizes")) {
        cfg.sizes.push_back(parse_u64_field(s, "sizes"));
    }
    if (j.contains("trials")) {
        cfg.trials = parse_u64_field(j.at("trials"), "trials");
        if (cfg.trials == 0) {
            throw std::invalid_argument("config: trials must be positive");
        }
    }
    if (!j.contains("seed")) {
        throw std::invalid_argument("config: seed is required");
    }
    cfg.seed = parse_u64_field(j.at("seed"), "seed");
    if (j.contains("exclude_zero")) {
        cfg.exclude_zero = j.at("exclude_zero").get<bool>();
    }
    if (j.contains("budgets")) {
        const auto& b = j.at("budgets");
        if (b.contains("sl2_pairs")) {
            cfg.budgets.sl2_pairs = parse_u64_field(b.at("sl2_pairs"), "sl2_pairs");
        }
        if (b.contains("heis_pairs")) {
            cfg.budgets.heis_pairs =
                parse_u64_field(b.at("heis_pairs"), "heis_pairs");
        }
        if (b.contains("collision_tuples")) {
            cfg.budgets.collision_tuples =
                parse_u64_field(b.at("collision_tuples"), "collision_tuples");
        }
    }
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_to_json(const ExperimentConfig& cfg) {
    ojson j;
    j["p"] = cfg.p;
    j["n"] = cfg.n;
    j["family"] = family_name(cfg.family);
    j["experiment"] = experiment_name(cfg.experiment);
    j["sizes"] = cfg.sizes;
    j["trials"] = cfg.trials;
    j["seed"] = std::to_string(cfg.seed);
    j["exclude_zero"] = cfg.exclude_zero;
    j["budgets"] = {{"sl2_pairs", cfg.budgets.sl2_pairs},
                    {"heis_pairs", cfg.budgets.heis_pairs},
                    {"collision_tuples", cfg.budgets.collision_tuples}};
    return j.dump();
}

u64 trial_seed(u64 seed, u64 size_index, u64 trial_index) {
    return mix64(seed ^ mix64((size_index << 32) + trial_index));
}

FSet generate_set(Family family, u64 size, u64 seed, const FieldCtx& ctx,
                  bool exclude_zero) {
    const u64 q = ctx.q();
    SplitMix64 rng(seed);

    switch (family) {
        case Family::uniform_random: {
            u64 domain = exclude_zero ? q - 1 : q;
            if (size > domain) {
                throw std::invalid_argument("uniform_random: size exceeds field");
            }
            std::vector<bool> seen(q, false);
            std::vector<Elem> out;
            out.reserve(size);
            while (out.size() < size) {
                Elem v = exclude_zero ? 1 + rng.next_below(q - 1)
                                      : rng.next_below(q);
                if (!seen[v]) {
                    seen[v] = true;
                    out.push_back(v);
                }
            }
            return FSet(ctx, std::move(out));
        }
        case Family::interval: {
            u64 start = exclude_zero ? 1 : 0;
            if (size > q - start) {
                throw std::invalid_argument("interval: size exceeds field");
            }
            std::vector<Elem> out;
            out.reserve(size);
            for (u64 i = 0; i < size; ++i) out.push_back(start + i);
            return FSet(ctx, std::move(out));
        }
        case Family::arithmetic_progression: {
            if (size == 0) return FSet(ctx, {});
            for (int attempt = 0; attempt < 1000; ++attempt) {
                Elem a = rng.next_below(q);
                Elem d = 1 + rng.next_below(q - 1);
                std::vector<Elem> out;
                out.reserve(size);
                Elem x = a;
                for (u64 i = 0; i < size; ++i) {
                    out.push_back(x);
                    x = ctx.add(x, d);
                }
                FSet s(ctx, std::move(out));
                if (s.size() == size && (!exclude_zero || !s.contains(0))) {
                    return s;
                }
            }
            throw std::invalid_argument(
                "arithmetic_progression: no progression of that size here");
        }
        case Family::geometric_progression: {
            if (size == 0) return FSet(ctx, {});
            if (size == 1) return FSet(ctx, {1 + rng.next_below(q - 1)});
            if (q < 3) {
                throw std::invalid_argument(
                    "geometric_progression: field too small for a ratio");
            }
            for (int attempt = 0; attempt < 1000; ++attempt) {
                Elem a = 1 + rng.next_below(q - 1);
                Elem r;
                do {
                    r = rng.next_below(q);
                } while (r == 0 || r == 1);
                std::vector<Elem> out;
                out.reserve(size);
                Elem x = a;
                for (u64 i = 0; i < size; ++i) {
                    out.push_back(x);
                    x = ctx.mul(x, r);
                }
                FSet s(ctx, std::move(out));
                if (s.size() == size) return s; // never contains 0
            }
            throw std::invalid_argument(
                "geometric_progression: no progression of that size here");
        }
        case Family::multiplicative_subgroup: {
            if (size == 0 || (q - 1) % size != 0) {
                throw std::invalid_argument(
                    "multiplicative_subgroup: size must divide q-1");
            }
            Elem g = primitive_root(ctx);
            Elem h = ctx.pow(g, (q - 1) / size);
            std::vector<Elem> out;
            out.reserve(size);
            Elem x = 1;
            for (u64 i = 0; i < size; ++i) {
                out.push_back(x);
                x = ctx.mul(x, h);
            }
            return FSet(ctx, std::move(out));
        }
        case Family::subfield_coset: {
            u64 target = size + (exclude_zero ? 1 : 0);
            if (target < 2) {
                throw std::invalid_argument("subfield_coset: size too small");
            }
            auto subs = list_subfields(ctx);
            const SubfieldDescriptor* pick = nullptr;
            for (const auto& sd : subs) {
                if (sd.size == target) pick = &sd;
            }
            if (!pick) {
                throw std::invalid_argument(
                    "subfield_coset: no subfield of matching size");
            }
            Elem g = primitive_root(ctx);
            u64 cosets = (q - 1) / (target - 1);
            Elem lambda = ctx.pow(g, rng.next_below(cosets));
            std::vector<Elem> out;
            out.reserve(size);
            for (Elem f : pick->elements) {
                Elem v = ctx.mul(lambda, f);
                if (exclude_zero && v == 0) continue;
                out.push_back(v);
            }
            return FSet(ctx, std::move(out));
        }
    }
    throw std::logic_error("unreachable");
}

CellValue CellValue::of_int(u128 v) {
    CellValue c;
    c.kind = Kind::integer;
    c.text = to_decimal(v);
    return c;
}

CellValue CellValue::of_bool(bool b) {
    CellValue c;
    c.kind = Kind::boolean;
    c.flag = b;
    return c;
}

CellValue CellValue::of_double(double d) {
    CellValue c;
    c.kind = Kind::floating;
    c.value = d;
    return c;
}

CellValue CellValue::of_text(std::string s) {
    CellValue c;
    c.kind = Kind::text;
    c.text = std::move(s);
    return c;
}

CellValue CellValue::none() { return CellValue{}; }

std::string CellValue::csv() const {
    switch (kind) {
        case Kind::integer:
        case Kind::text: return text;
        case Kind::boolean: return flag ? "true" : "false";
        case Kind::floating: return double_text(value);
        case Kind::empty: return "";
    }
    return "";
}

namespace {

void put_int(TrialResult& row, const char* name, u128 v, bool numeric = false) {
    row.cols.emplace_back(name, CellValue::of_int(v));
    if (numeric) row.numeric[name] = static_cast<double>(v);
}

void put_bool(TrialResult& row, const char* name, bool b) {
    row.cols.emplace_back(name, CellValue::of_bool(b));
}

void put_double(TrialResult& row, const char* name, double d) {
    row.cols.emplace_back(name, CellValue::of_double(d));
}

void put_text(TrialResult& row, const char* name, std::string s) {
    row.cols.emplace_back(name, CellValue::of_text(std::move(s)));
}

void put_empty(TrialResult& row, const char* name) {
    row.cols.emplace_back(name, CellValue::none());
}

void put_log_ratio(TrialResult& row, u64 size, u128 value) {
    if (size >= 2 && value >= 1) {
        double lr = std::log(static_cast<double>(value)) /
                    std::log(static_cast<double>(size));
        put_double(row, "log_ratio", lr);
    } else {
        put_empty(row, "log_ratio");
    }
}

void run_sl2_trial(const ExperimentConfig& cfg, const FieldCtx& ctx,
                   SplitMix64& rng, TrialResult& row) {
    FSet A = generate_set(cfg.family, row.size, rng.next(), ctx,
                          cfg.exclude_zero);
    row.set_elements = A.elements();

    MatSet R = build_R(A);
    NuStats nu = nu_statistics(A);
    u64 rr = nu.distinct_nonzero_t() + nu.zero_t_distinct_products;
    SL2CsCertificate cs = cs_lower_bound_certificate(A);
    SL2ContainmentCertificate cont = containment_certificate(A);

    put_int(row, "r_size", R.size(), true);
    put_int(row, "rr_size", rr, true);
    put_int(row, "t_count", nu.T);
    put_int(row, "sum_nu", nu.sum_nu_nonzero_t);
    put_int(row, "cs_lhs", cs.lhs);
    put_bool(row, "cs_ok", cs.ok);
    put_int(row, "cont_rhs", cont.rhs);
    put_bool(row, "cont_ok", cont.ok);
    put_log_ratio(row, row.size, rr);
    row.certs_ok = cs.ok && cont.ok;
}

void run_heis2_zero_trial(const ExperimentConfig& cfg, const FieldCtx& ctx,
                          SplitMix64& rng, TrialResult& row) {
    FSet A = generate_set(cfg.family, row.size, rng.next(), ctx,
                          cfg.exclude_zero);
    row.set_elements = A.elements();

    HeisCsCertificate cs = cs_certificate_heis(A);
    BilinearImageCertificate bil = bilinear_image_certificate(A);

    bool direct_feasible =
        checked_pow(A.size(), 8) <= cfg.budgets.collision_tuples &&
        checked_pow(ctx.q(), 5) < (u128(1) << 63);
    bool n_equal = true;
    put_int(row, "lhs", cs.lhs, true);
    put_int(row, "n_fiber", cs.N);
    if (direct_feasible) {
        CollisionReport direct =
            collision_count_direct(A, cfg.budgets.collision_tuples);
        n_equal = direct.N == cs.N;
        put_int(row, "n_direct", direct.N);
        put_bool(row, "n_equal", n_equal);
    } else {
        put_empty(row, "n_direct");
        put_empty(row, "n_equal");
    }
    put_bool(row, "cs_ok", cs.ok);
    put_int(row, "bil_image", bil.image_size);
    put_int(row, "bil_rhs", bil.rhs);
    put_bool(row, "bil_ok", bil.ok);
    put_log_ratio(row, row.size, cs.lhs);
    row.certs_ok = cs.ok && bil.ok && n_equal;
}

void run_heis2_full_trial(const ExperimentConfig& cfg, const FieldCtx& ctx,
                          SplitMix64& rng, TrialResult& row) {
    FSet A = generate_set(cfg.family, row.size, rng.next(), ctx,
                          cfg.exclude_zero);
    row.set_elements = A.elements();

    Thm4Certificate cert = thm4_certificate(A);
    put_int(row, "lhs", cert.lhs, true);
    put_int(row, "w_size", cert.w_size);
    put_int(row, "rhs", cert.rhs);
    put_bool(row, "ok", cert.ok);
    put_log_ratio(row, row.size, cert.lhs);
    row.certs_ok = cert.ok;
}

void run_heis1_trial(const ExperimentConfig& cfg, const FieldCtx& ctx,
                     SplitMix64& rng, TrialResult& row) {
    FSet A = generate_set(cfg.family, row.size, rng.next(), ctx,
                          cfg.exclude_zero);
    row.set_elements = A.elements();

    Degree1Report rep = hh_degree1_quantities(A);
    put_int(row, "size_sq", rep.size_sq, true);
    put_int(row, "sum_size", rep.sum_size, true);
    put_int(row, "prod_size", rep.prod_size, true);
    put_int(row, "max_sum_prod", rep.max_sum_prod, true);
    put_int(row, "aa_plus_aa", rep.aa_plus_aa, true);
    put_double(row, "ratio_main", rep.ratio_main);
    put_double(row, "ratio_7_2", rep.ratio_7_2);
    put_double(row, "ratio_3_1_11", rep.ratio_3_1_11);
    put_double(row, "ratio_sum_prod", rep.ratio_sum_prod);
    put_double(row, "ratio_aa_aa", rep.ratio_aa_aa);
    put_log_ratio(row, row.size, rep.size_sq);
}

void run_energies_trial(const ExperimentConfig& cfg, const FieldCtx& ctx,
                        SplitMix64& rng, TrialResult& row) {
    FSet A = generate_set(cfg.family, row.size, rng.next(), ctx,
                          cfg.exclude_zero);
    FSet B = generate_set(cfg.family, row.size, rng.next(), ctx,
                          cfg.exclude_zero);
    row.set_elements = A.elements();

    u128 ea = additive_energy(A).value;
    u128 em = mult_energy(A, B).value;
    EnergyReport q = bilinear_energy_Q(A, B, A, B);
    ShiftedIntersectionReport msi = max_shifted_intersection(A, B);

    put_int(row, "e_add", ea, true);
    put_int(row, "e_mul", em, true);
    put_int(row, "q_abab", q.value, true);
    put_int(row, "msi_max", msi.max);
    put_double(row, "msi_rhs_ratio", msi.rhs_ratio);
    put_double(row, "msi_hyp_ratio", msi.hyp_ratio);
    put_log_ratio(row, row.size, ea);
}

// Draw exactly `count` distinct canonical lines / planes / points.
std::vector<std::array<Elem, 3>> draw_lines(const FieldCtx& ctx,
                                            SplitMix64& rng, u64 count) {
    const u64 p = ctx.p();
    if (count > p * p + p) {
        throw std::invalid_argument("more lines requested than the plane has");
    }
    std::set<std::array<Elem, 3>> out;
    while (out.size() < count) {
        Elem u = rng.next_below(p), v = rng.next_below(p), w = rng.next_below(p);
        if (u == 0 && v == 0) continue;
        if (u != 0) {
            Elem s = ctx.inv(u);
            out.insert({1, ctx.mul(v, s), ctx.mul(w, s)});
        } else {
            Elem s = ctx.inv(v);
            out.insert({0, 1, ctx.mul(w, s)});
        }
    }
    return std::vector<std::array<Elem, 3>>(out.begin(), out.end());
}

std::vector<std::array<Elem, 4>> draw_planes(const FieldCtx& ctx,
                                             SplitMix64& rng, u64 count) {
    const u64 p = ctx.p();
    if (count > p * p * p + p * p + p) {
        throw std::invalid_argument("more planes requested than space has");
    }
    std::set<std::array<Elem, 4>> out;
    while (out.size() < count) {
        std::array<Elem, 4> pl = {rng.next_below(p), rng.next_below(p),
                                  rng.next_below(p), rng.next_below(p)};
        unsigned lead = 0;
        while (lead < 3 && pl[lead] == 0) ++lead;
        if (lead == 3) continue;
        Elem s = ctx.inv(pl[lead]);
        for (auto& c : pl) c = ctx.mul(c, s);
        out.insert(pl);
    }
    return std::vector<std::array<Elem, 4>>(out.begin(), out.end());
}

std::vector<std::array<Elem, 3>> draw_points3(const FieldCtx& ctx,
                                              SplitMix64& rng, u64 count) {
    const u64 p = ctx.p();
    if (count > p * p * p) {
        throw std::invalid_argument("more points requested than space has");
    }
    std::set<std::array<Elem, 3>> out;
    while (out.size() < count) {
        out.insert({rng.next_below(p), rng.next_below(p), rng.next_below(p)});
    }
    return std::vector<std::array<Elem, 3>>(out.begin(), out.end());
}

void run_incidence_trial(const ExperimentConfig& cfg, const FieldCtx& ctx,
                         SplitMix64& rng, TrialResult& row) {
    FSet A = generate_set(cfg.family, row.size, rng.next(), ctx,
                          cfg.exclude_zero);
    FSet B = generate_set(cfg.family, row.size, rng.next(), ctx,
                          cfg.exclude_zero);
    row.set_elements = A.elements();

    u64 count = row.size * row.size;
    LineSet L(ctx, draw_lines(ctx, rng, count));
    SdzReport sdz = sdz_bound_report(A, B, L);

    PointSet P(ctx, 3, draw_points3(ctx, rng, count));
    PlaneSet Pi(ctx, draw_planes(ctx, rng, count));
    RudnevReport rud = rudnev_bound_report(P, Pi);

    put_int(row, "l_count", L.size());
    put_int(row, "i_grid", sdz.I, true);
    put_double(row, "sdz_bound", sdz.bound_main);
    put_bool(row, "sdz_hyp1", sdz.bound_hyp1);
    put_double(row, "sdz_hyp2", sdz.bound_hyp2);
    put_double(row, "sdz_ratio", sdz.ratio);
    put_bool(row, "sdz_unit_c", sdz.within_unit_constant);
    put_int(row, "rud_i", rud.I);
    put_int(row, "rud_k", rud.k);
    put_double(row, "rud_bound", rud.bound);
    put_double(row, "rud_ratio", rud.ratio);
    put_bool(row, "rud_ok", rud.ok);
    put_log_ratio(row, row.size, sdz.I);
    row.certs_ok = rud.ok;
}

void run_inequalities_trial(const ExperimentConfig& cfg, const FieldCtx& ctx,
                            SplitMix64& rng, TrialResult& row) {
    u64 k = 2 + rng.next_below(3);
    FSet X = generate_set(cfg.family, row.size, rng.next(), ctx,
                          cfg.exclude_zero);
    row.set_elements = X.elements();
    std::vector<FSet> Bs;
    std::string b_sizes;
    for (u64 i = 0; i < k; ++i) {
        Bs.push_back(generate_set(cfg.family, row.size, rng.next(), ctx,
                                  cfg.exclude_zero));
        if (i) b_sizes += ';';
        b_sizes += std::to_string(Bs.back().size());
    }
    PRReport pr = pr_inequality_check(X, Bs);

    put_int(row, "k", k);
    put_int(row, "x_size", X.size());
    put_text(row, "b_sizes", b_sizes);
    put_int(row, "lhs", pr.sum_lhs);
    put_text(row, "rhs", pr.sum_rhs.str());
    put_bool(row, "sum_ok", pr.sum_ok);
    if (pr.has_diff) {
        put_int(row, "diff_lhs", pr.diff_lhs);
        put_text(row, "diff_rhs", pr.diff_rhs.str());
        put_bool(row, "diff_ok", pr.diff_ok);
    } else {
        put_empty(row, "diff_lhs");
        put_empty(row, "diff_rhs");
        put_empty(row, "diff_ok");
    }
    put_bool(row, "ok", pr.ok);
    row.certs_ok = pr.ok;
}

void dispatch_trial(const ExperimentConfig& cfg, const FieldCtx& ctx,
                    SplitMix64& rng, TrialResult& row) {
    switch (cfg.experiment) {
        case Experiment::sl2_product: run_sl2_trial(cfg, ctx, rng, row); return;
        case Experiment::heis2_zero:
            run_heis2_zero_trial(cfg, ctx, rng, row);
            return;
        case Experiment::heis2_full:
            run_heis2_full_trial(cfg, ctx, rng, row);
            return;
        case Experiment::heis1: run_heis1_trial(cfg, ctx, rng, row); return;
        case Experiment::energies:
            run_energies_trial(cfg, ctx, rng, row);
            return;
        case Experiment::incidence:
            run_incidence_trial(cfg, ctx, rng, row);
            return;
        case Experiment::inequalities:
            run_inequalities_trial(cfg, ctx, rng, row);
            return;
    }
    throw std::logic_error("unreachable");
}

std::vector<std::string> fit_targets(Experiment e) {
    switch (e) {
        case Experiment::sl2_product: return {"r_size", "rr_size"};
        case Experiment::heis2_zero: return {"lhs"};
        case Experiment::heis2_full: return {"lhs"};
        case Experiment::heis1:
            return {"size_sq", "sum_size", "prod_size", "max_sum_prod",
                    "aa_plus_aa"};
        case Experiment::energies: return {"e_add", "e_mul", "q_abab"};
        case Experiment::incidence: return {"i_grid"};
        case Experiment::inequalities: return {};
    }
    return {};
}

} // namespace

RunResult run_experiment(const ExperimentConfig& cfg) {
    FieldCtx ctx = FieldCtx::make(cfg.p, cfg.n);
    if (cfg.experiment == Experiment::sl2_product && cfg.n != 1) {
        throw std::invalid_argument("sl2_product wants a prime field");
    }
    if (cfg.experiment == Experiment::incidence && cfg.n != 1) {
        throw std::invalid_argument("incidence wants a prime field");
    }
    if (cfg.sizes.empty()) throw std::invalid_argument("no sizes configured");
    if (cfg.trials == 0) throw std::invalid_argument("trials must be positive");

    RunResult res;
    res.config = cfg;
    for (size_t si = 0; si < cfg.sizes.size(); ++si) {
        for (u64 ti = 0; ti < cfg.trials; ++ti) {
            TrialResult row;
            row.size = cfg.sizes[si];
            row.trial = ti;
            row.seed = trial_seed(cfg.seed, si, ti);
            SplitMix64 rng(row.seed);
            try {
                dispatch_trial(cfg, ctx, rng, row);
            } catch (const std::exception& e) {
                std::ostringstream ss;
                ss << "trial failed (size=" << row.size << " trial=" << ti
                   << " seed=" << row.seed << "): " << e.what();
                throw std::runtime_error(ss.str());
            }
            res.rows.push_back(std::move(row));
        }
    }
    std::sort(res.rows.begin(), res.rows.end(),
              [](const TrialResult& a, const TrialResult& b) {
                  return a.size != b.size ? a.size < b.size : a.trial < b.trial;
              });
    res.columns.reserve(res.rows.front().cols.size());
    for (const auto& [name, cell] : res.rows.front().cols) {
        res.columns.push_back(name);
    }
    for (const auto& row : res.rows) {
        if (!row.certs_ok) ++res.cert_failures;
    }

    for (const std::string& target : fit_targets(cfg.experiment)) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& row : res.rows) {
            auto it = row.numeric.find(target);
            if (row.size >= 2 && it != row.numeric.end() && it->second >= 1.0) {
                pts.emplace_back(std::log(static_cast<double>(row.size)),
                                 std::log(it->second));
            }
        }
        if (pts.size() < 2) continue;
        double xm = 0, ym = 0;
        for (auto& [x, y] : pts) {
            xm += x;
            ym += y;
        }
        xm /= pts.size();
        ym /= pts.size();
        double sxx = 0, sxy = 0;
        for (auto& [x, y] : pts) {
            sxx += (x - xm) * (x - xm);
            sxy += (x - xm) * (y - ym);
        }
        if (sxx == 0) continue;
        ExponentFit fit;
        fit.target = target;
        fit.slope = sxy / sxx;
        fit.intercept = ym - fit.slope * xm;
        fit.samples = pts.size();
        for (auto& [x, y] : pts) {
            double r = y - (fit.intercept + fit.slope * x);
            fit.rss += r * r;
        }
        res.fits.push_back(std::move(fit));
    }
    return res;
}

std::string to_csv(const RunResult& r) {
    std::ostringstream out;
    out << "# config: " << config_to_json(r.config) << "\n";
    out << "p,n,family,experiment,size,trial,seed";
    for (const auto& c : r.columns) out << ',' << c;
    out << "\n";
    for (const auto& row : r.rows) {
        out << r.config.p << ',' << r.config.n << ','
            << family_name(r.config.family) << ','
            << experiment_name(r.config.experiment) << ',' << row.size << ','
            << row.trial << ',' << row.seed;
        for (const auto& [name, cell] : row.cols) out << ',' << cell.csv();
        out << "\n";
    }
    for (const auto& fit : r.fits) {
        out << "# fit: target=" << fit.target << " slope=" << double_text(fit.slope)
            << " intercept=" << double_text(fit.intercept)
            << " samples=" << fit.samples << " rss=" << double_text(fit.rss)
            << "\n";
    }
    return out.str();
}

std::string to_json(const RunResult& r) {
    ojson root;
    root["schema"] = "ffgrowth/1";
    root["config"] = ojson::parse(config_to_json(r.config));
    ojson cols = ojson::array();
    for (const char* base :
         {"p", "n", "family", "experiment", "size", "trial", "seed"}) {
        cols.push_back(base);
    }
    for (const auto& c : r.columns) cols.push_back(c);
    root["columns"] = cols;

    ojson rows = ojson::array();
    for (const auto& row : r.rows) {
        ojson o;
        o["p"] = std::to_string(r.config.p);
        o["n"] = std::to_string(r.config.n);
        o["family"] = family_name(r.config.family);
        o["experiment"] = experiment_name(r.config.experiment);
        o["size"] = std::to_string(row.size);
        o["trial"] = std::to_string(row.trial);
        o["seed"] = std::to_string(row.seed);
        ojson set = ojson::array();
        for (Elem e : row.set_elements) set.push_back(std::to_string(e));
        o["set"] = set;
        for (const auto& [name, cell] : row.cols) {
            switch (cell.kind) {
                case CellValue::Kind::integer:
                case CellValue::Kind::text: o[name] = cell.text; break;
                case CellValue::Kind::boolean: o[name] = cell.flag; break;
                case CellValue::Kind::floating: o[name] = cell.value; break;
                case CellValue::Kind::empty: o[name] = ""; break;
            }
        }
        rows.push_back(std::move(o));
    }
    root["rows"] = rows;

    ojson fits = ojson::array();
    for (const auto& fit : r.fits) {
        ojson f;
        f["target"] = fit.target;
        f["slope"] = fit.slope;
        f["intercept"] = fit.intercept;
        f["samples"] = std::to_string(fit.samples);
        f["rss"] = fit.rss;
        fits.push_back(std::move(f));
    }
    root["fits"] = fits;
    root["cert_failures"] = std::to_string(r.cert_failures);
    return root.dump(2) + "\n";
}

namespace {

std::string join_elems(const std::vector<Elem>& es) {
    std::string s = "{";
    for (size_t i = 0; i < es.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(es[i]);
    }
    return s + "}";
}

} // namespace

VerifySummary verify_suite(const ExperimentConfig& cfg) {
    FieldCtx ctx = FieldCtx::make(cfg.p, cfg.n);
    VerifySummary sum;

    for (size_t si = 0; si < cfg.sizes.size(); ++si) {
        for (u64 ti = 0; ti < cfg.trials; ++ti) {
            u64 seed = trial_seed(cfg.seed, si, ti);
            SplitMix64 rng(seed);
            FSet A = generate_set(cfg.family, cfg.sizes[si], rng.next(), ctx,
                                  cfg.exclude_zero);

            std::ostringstream where;
            where << "p=" << cfg.p << " n=" << cfg.n
                  << " family=" << family_name(cfg.family)
                  << " size=" << cfg.sizes[si] << " trial=" << ti
                  << " seed=" << seed << " A=" << join_elems(A.elements());

            auto check = [&](const char* name, auto&& body) {
                try {
                    ++sum.checks_run;
                    std::string detail;
                    if (!body(detail)) {
                        ++sum.failures;
                        sum.failure_details.push_back(std::string(name) + ": " +
                                                      where.str() +
                                                      (detail.empty() ? "" : " ") +
                                                      detail);
                    }
                } catch (const budget_error&) {
                    --sum.checks_run;
                    ++sum.skipped;
                } catch (const std::overflow_error&) {
                    --sum.checks_run;
                    ++sum.skipped;
                }
            };
            auto skip = [&] { ++sum.skipped; };

            if (A.empty()) {
                sum.skipped += 8;
                continue;
            }

            // Group law sanity in the Heisenberg group.
            check("heis_axioms", [&](std::string&) {
                const auto& as = A.elements();
                auto pickx = [&](size_t i) { return as[i % as.size()]; };
                std::vector<HeisElem> gs;
                for (size_t i = 0; i < 3; ++i) {
                    HeisElem g;
                    g.x = {pickx(i), pickx(i + 1)};
                    g.y = {pickx(i + 2), pickx(i)};
                    g.z = pickx(i + 1);
                    gs.push_back(g);
                }
                HeisElem ab_c = heis_mul(ctx, heis_mul(ctx, gs[0], gs[1]), gs[2]);
                HeisElem a_bc = heis_mul(ctx, gs[0], heis_mul(ctx, gs[1], gs[2]));
                if (!(ab_c == a_bc)) return false;
                HeisElem id = heis_identity(2);
                for (const auto& g : gs) {
                    if (!(heis_mul(ctx, g, heis_inverse(ctx, g)) == id)) {
                        return false;
                    }
                    if (!(heis_mul(ctx, id, g) == g)) return false;
                }
                return true;
            });

            // Cauchy-Schwarz lower bounds for the energies.
            check("energy_cs", [&](std::string&) {
                FSet S = sumset(A, A);
                u128 ea = additive_energy(A).value;
                u128 a4 = checked_pow(A.size(), 4);
                if (checked_mul(ea, S.size()) < a4) return false;
                EnergyReport q = bilinear_energy_Q(A, A, A, A);
                FSet AA = product_set(A, A);
                FSet img = sumset(AA, AA);
                return checked_mul(q.value, img.size()) >=
                       checked_mul(a4, a4);
            });

            // Iterated sumset inequality on derived sets.
            check("plunnecke_ruzsa", [&](std::string& detail) {
                FSet B1 = generate_set(cfg.family, cfg.sizes[si], rng.next(),
                                       ctx, cfg.exclude_zero);
                FSet B2 = generate_set(cfg.family, cfg.sizes[si], rng.next(),
                                       ctx, cfg.exclude_zero);
                PRReport pr = pr_inequality_check(A, {B1, B2});
                if (!pr.ok) {
                    detail = "B1=" + join_elems(B1.elements()) +
                             " B2=" + join_elems(B2.elements());
                }
                return pr.ok;
            });

            // Matrix-set certificates need a prime field, small p, 0 not in A.
            if (ctx.n() == 1 && ctx.p() < 65536 && !A.contains(0)) {
                check("sl2_axioms", [&](std::string&) {
                    MatSet R = build_R(A);
                    size_t take = std::min<size_t>(R.size(), 3);
                    for (size_t i = 0; i < take; ++i) {
                        MatSL2 m = R.at(i);
                        MatSL2 mi = mat_inverse(ctx, m);
                        if (!(mat_mul(ctx, m, mi) == sl2_identity())) {
                            return false;
                        }
                        for (size_t j = 0; j < take; ++j) {
                            for (size_t k = 0; k < take; ++k) {
                                MatSL2 l =
                                    mat_mul(ctx, mat_mul(ctx, R.at(i), R.at(j)),
                                            R.at(k));
                                MatSL2 r =
                                    mat_mul(ctx, R.at(i),
                                            mat_mul(ctx, R.at(j), R.at(k)));
                                if (!(l == r)) return false;
                            }
                        }
                    }
                    return true;
                });
                check("sl2_cs_lower_bound", [&](std::string& detail) {
                    SL2CsCertificate c = cs_lower_bound_certificate(A);
                    if (!c.ok) {
                        detail = "lhs=" + std::to_string(c.lhs) +
                                 " rhs=" + c.rhs.str();
                    }
                    return c.ok;
                });
                check("sl2_containment", [&](std::string& detail) {
                    SL2ContainmentCertificate c = containment_certificate(A);
                    if (!c.ok) {
                        detail = "lhs=" + std::to_string(c.lhs) +
                                 " rhs=" + to_decimal(c.rhs);
                    }
                    return c.ok;
                });
            } else {
                skip();
                skip();
                skip();
            }

            check("heis_cs", [&](std::string& detail) {
                HeisCsCertificate c = cs_certificate_heis(A);
                if (!c.ok) {
                    detail = "lhs=" + std::to_string(c.lhs) +
                             " N=" + to_decimal(c.N);
                }
                return c.ok;
            });
            check("heis_bilinear_image", [&](std::string& detail) {
                BilinearImageCertificate c = bilinear_image_certificate(A);
                if (!c.ok) {
                    detail = "lhs=" + std::to_string(c.lhs) +
                             " rhs=" + to_decimal(c.rhs);
                }
                return c.ok;
            });
            if (A.size() <= 10) {
                check("heis_thm4", [&](std::string& detail) {
                    Thm4Certificate c = thm4_certificate(A);
                    if (!c.ok) {
                        detail = "lhs=" + std::to_string(c.lhs) +
                                 " rhs=" + to_decimal(c.rhs);
                    }
                    return c.ok;
                });
            } else {
                skip();
            }

            // Direct vs fiber collision count.
            if (checked_pow(A.size(), 8) <= cfg.budgets.collision_tuples &&
                checked_pow(ctx.q(), 5) < (u128(1) << 63) &&
                ctx.q() <= RepFunction::kDenseCap) {
                check("collision_cross_check", [&](std::string& detail) {
                    CollisionReport d =
                        collision_count_direct(A, cfg.budgets.collision_tuples);
                    CollisionReport f = collision_count_fiber(A);
                    if (d.N != f.N) {
                        detail = "direct=" + to_decimal(d.N) +
                                 " fiber=" + to_decimal(f.N);
                    }
                    return d.N == f.N;
                });
            } else {
                skip();
            }

            // Point-plane bound on a derived random configuration.
            if (ctx.n() == 1) {
                check("rudnev_bound", [&](std::string& detail) {
                    u64 count = std::min<u64>(cfg.sizes[si] * cfg.sizes[si],
                                              ctx.p() * ctx.p());
                    PointSet P(ctx, 3, draw_points3(ctx, rng, count));
                    PlaneSet Pi(ctx, draw_planes(ctx, rng, count));
                    RudnevReport rep = rudnev_bound_report(P, Pi);
                    if (!rep.ok) {
                        detail = "I=" + std::to_string(rep.I) +
                                 " k=" + std::to_string(rep.k);
                    }
                    return rep.ok;
                });
            } else {
                skip();
            }
        }
    }
    return sum;
}

} // namespace ffgrowth
