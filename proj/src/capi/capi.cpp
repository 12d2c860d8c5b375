#include "lhc/lhc.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "core/algorithm.hpp"
#include "core/harness.hpp"
#include "core/json_io.hpp"

using nlohmann::json;

struct lhc_hypergraph {
    lhc::Hypergraph impl;
};

namespace {

thread_local std::string g_last_error = "no error";

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Maps the C++ error taxonomy onto status codes; runs `body` and routes any
// message into the thread-local error slot.
template <typename Fn>
lhc_status guarded(Fn&& body) {
    try {
        body();
        return LHC_OK;
    } catch (const lhc::EdgeTooSmall& e) {
        g_last_error = e.what();
        return LHC_ERR_VALIDATION;
    } catch (const lhc::ValidationError& e) {
        g_last_error = e.what();
        return LHC_ERR_VALIDATION;
    } catch (const lhc::DomainError& e) {
        g_last_error = e.what();
        return LHC_ERR_DOMAIN;
    } catch (const lhc::TooLarge& e) {
        g_last_error = e.what();
        return LHC_ERR_TOO_LARGE;
    } catch (const lhc::GenerationFailed& e) {
        g_last_error = e.what();
        return LHC_ERR_GENERATION;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return LHC_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return LHC_ERR_INTERNAL;
    }
}

lhc_status require_args(bool ok) {
    if (!ok) {
        g_last_error = "null argument";
        return LHC_ERR_VALIDATION;
    }
    return LHC_OK;
}

lhc::AlgoParams params_from_config(const json& cfg) {
    lhc::AlgoParams p;
    if (cfg.contains("alpha")) p.alpha = cfg.at("alpha").get<double>();
    if (cfg.contains("dangerous_frac")) p.dangerous_frac = cfg.at("dangerous_frac").get<double>();
    if (cfg.contains("u")) p.u = cfg.at("u").get<std::uint32_t>();
    if (cfg.contains("beta")) p.beta = cfg.at("beta").get<std::uint32_t>();
    if (cfg.contains("num_epochs")) p.num_epochs = cfg.at("num_epochs").get<std::uint32_t>();
    if (cfg.contains("exhaustive_cap"))
        p.exhaustive_cap = cfg.at("exhaustive_cap").get<std::uint32_t>();
    p.validate();
    return p;
}

json parse_config(const char* config_json) {
    return config_json && *config_json ? lhc::parse_json(config_json) : json::object();
}

} // namespace

extern "C" {

const char* lhc_last_error(void) { return g_last_error.c_str(); }

void lhc_string_free(char* s) { std::free(s); }

void lhc_hypergraph_free(lhc_hypergraph* h) { delete h; }

lhc_status lhc_hypergraph_from_json(const char* json_text, lhc_hypergraph** out) {
    if (lhc_status s = require_args(json_text && out)) return s;
    return guarded([&] {
        *out = new lhc_hypergraph{lhc::hypergraph_from_json(lhc::parse_json(json_text))};
    });
}

lhc_status lhc_hypergraph_to_json(const lhc_hypergraph* h, char** out_json) {
    if (lhc_status s = require_args(h && out_json)) return s;
    return guarded([&] { *out_json = dup_string(lhc::hypergraph_to_json(h->impl).dump()); });
}

lhc_status lhc_generate(const char* spec_json, lhc_hypergraph** out) {
    if (lhc_status s = require_args(spec_json && out)) return s;
    return guarded([&] {
        json j = lhc::parse_json(spec_json);
        lhc::GeneratorSpec spec;
        if (!j.contains("family"))
            throw lhc::ValidationError("generator spec is missing \"family\"");
        spec.family = lhc::family_from_string(j.at("family").get<std::string>());
        if (j.contains("n")) spec.n = j.at("n").get<std::uint32_t>();
        if (j.contains("delta")) spec.delta = j.at("delta").get<std::uint32_t>();
        if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("max_degree")) spec.max_degree = j.at("max_degree").get<std::uint32_t>();
        *out = new lhc_hypergraph{lhc::generate(spec)};
    });
}

lhc_status lhc_run(const lhc_hypergraph* h, const char* config_json, char** out_json) {
    if (lhc_status s = require_args(h && out_json)) return s;
    return guarded([&] {
        json cfg = parse_config(config_json);
        lhc::AlgoParams params = params_from_config(cfg);
        const bool traces = cfg.value("include_traces", false);
        lhc::ColoringSequence seq;
        if (cfg.contains("colorings")) {
            seq = lhc::coloring_sequence_from_json(cfg.at("colorings"));
        } else {
            const std::uint64_t seed = cfg.value("seed", std::uint64_t{1});
            seq = lhc::random_coloring_sequence(h->impl.n_vertices(),
                                                params.phase_budget(h->impl.n_vertices()), seed);
        }
        lhc::RunResult res = lhc::run(h->impl, seq, params, traces);
        *out_json = dup_string(lhc::run_result_to_json(res, traces).dump());
    });
}

lhc_status lhc_experiment(const lhc_hypergraph* h, const char* config_json, char** out_json) {
    if (lhc_status s = require_args(h && config_json && out_json)) return s;
    return guarded([&] {
        json cfg = lhc::parse_json(config_json);
        if (!cfg.contains("experiment"))
            throw lhc::ValidationError("experiment config is missing \"experiment\"");
        const std::string kind = cfg.at("experiment").get<std::string>();
        if (!cfg.contains("trials"))
            throw lhc::ValidationError("experiment config is missing \"trials\"");
        const std::uint32_t trials = cfg.at("trials").get<std::uint32_t>();
        const std::uint64_t seed = cfg.value("seed", std::uint64_t{1});
        lhc::AlgoParams params = params_from_config(cfg);

        json out;
        if (kind == "success-rate") {
            out = lhc::experiment_success_rate(h->impl, params, trials, seed).to_json();
        } else if (kind == "claim") {
            const std::uint32_t ell = cfg.value("ell_max", std::uint32_t{3});
            out = lhc::experiment_claim(h->impl, params, trials, ell, seed).to_json();
        } else if (kind == "shrinkage") {
            out = lhc::experiment_shrinkage(h->impl, params, trials, seed).to_json();
        } else {
            throw lhc::DomainError("unknown experiment \"" + kind + "\"");
        }
        *out_json = dup_string(out.dump());
    });
}

lhc_status lhc_search_colorings(const lhc_hypergraph* const* universe, size_t count,
                                const char* config_json, char** out_json) {
    if (lhc_status s = require_args(universe && count > 0 && config_json && out_json)) return s;
    return guarded([&] {
        json cfg = lhc::parse_json(config_json);
        if (!cfg.contains("budget"))
            throw lhc::ValidationError("search config is missing \"budget\"");
        std::vector<lhc::Hypergraph> instances;
        instances.reserve(count);
        for (size_t i = 0; i < count; ++i) {
            if (!universe[i]) throw lhc::ValidationError("null instance in universe");
            instances.push_back(universe[i]->impl);
        }
        lhc::SearchResult res =
            lhc::search_colorings(instances, params_from_config(cfg),
                                  cfg.at("budget").get<std::uint64_t>(),
                                  cfg.value("seed", std::uint64_t{1}));
        *out_json = dup_string(res.to_json().dump());
    });
}

lhc_status lhc_oracle_bichromatic(const lhc_hypergraph* h, char** out_json) {
    if (lhc_status s = require_args(h && out_json)) return s;
    return guarded([&] {
        lhc::BruteForceResult res = lhc::brute_force_bichromatic(h->impl);
        json coloring = json::array();
        for (lhc::Color c : res.coloring) coloring.push_back(std::string(1, lhc::color_char(c)));
        json out{{"feasible", res.feasible}, {"coloring", coloring}, {"tried", res.tried}};
        *out_json = dup_string(out.dump());
    });
}

} // extern "C"
