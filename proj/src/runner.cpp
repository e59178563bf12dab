#include "flashlat/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace flashlat {

using nlohmann::json;

std::string format_float(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << contents;
    }
    std::filesystem::rename(tmp, path);
}

namespace {

void log_run(const RunConfig& config, std::ostream& log, const char* name) {
    log << name << ": config_hash=" << config.config_hash << " rng_seed=" << config.rng_seed
        << "\n";
}

json header(const RunConfig& config) {
    json j;
    j["schema_version"] = 1;
    j["config_hash"] = config.config_hash;
    j["rng_seed"] = config.rng_seed;
    return j;
}

json config_json(const FlashConfig& config) {
    json flashes = json::array();
    for (std::size_t i = 0; i < config.size(); ++i) {
        for (std::size_t k = 0; k < config[i].size(); ++k) {
            json f;
            f["particle"] = i;
            f["index"] = k + 1;
            f["band"] = config[i][k].band;
            f["site"] = config[i][k].site;
            flashes.push_back(std::move(f));
        }
    }
    return flashes;
}

void ensure_dir(const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
}

// Aligned staircases for the randomized verify suites.
Cut random_aligned_cut(const Strip& strip, std::mt19937_64& rng) {
    std::vector<int> h(static_cast<std::size_t>(strip.sites));
    h[0] = static_cast<int>(rng() % (strip.t_max + 1));
    for (int x = 0; x + 1 < strip.sites; ++x) {
        std::vector<int> options{h[x]};
        if (h[x] + 1 <= strip.t_max && (x + h[x]) % 2 == 1) options.push_back(h[x] + 1);
        if (h[x] - 1 >= 0 && (x + h[x] - 1) % 2 == 1) options.push_back(h[x] - 1);
        h[x + 1] = options[rng() % options.size()];
    }
    return Cut(std::move(h), strip);
}

}  // namespace

int run_verify(const RunConfig& config, const std::string& out_dir, std::ostream& log,
               int threads) {
    log_run(config, log, "verify");
    ensure_dir(out_dir);
    const ModelInstance instance = make_instance(config);
    const Circuit circuit(config.strip, make_gate_params(config), config.params.particles());
    std::mt19937_64 rng(config.rng_seed);
    json checks = json::array();
    bool all_ok = true;

    const auto record = [&](const char* name, double deviation, double tolerance) {
        const bool ok = deviation <= tolerance;
        all_ok = all_ok && ok;
        json c;
        c["name"] = name;
        c["deviation"] = deviation;
        c["tolerance"] = tolerance;
        c["pass"] = ok;
        checks.push_back(std::move(c));
        log << (ok ? "  [ok]   " : "  [FAIL] ") << name << "  deviation=" << deviation
            << " tolerance=" << tolerance << "\n";
    };

    // Cut-off profile normalization identity.
    {
        double worst = 0.0;
        for (int trial = 0; trial < 60; ++trial) {
            const Cut cut = random_aligned_cut(config.strip, rng);
            std::vector<int> region;
            for (int x = 0; x < config.strip.sites; ++x) {
                if (rng() % 2 == 0) region.push_back(x);
            }
            if (region.empty()) region.push_back(static_cast<int>(rng() % config.strip.sites));
            for (int z = 0; z < config.strip.sites; ++z) {
                double sum = 0.0;
                for (int center : region) {
                    const auto g = cutoff_profile(cut, region, center, config.params.sigma,
                                                  config.params.metric);
                    sum += g[static_cast<std::size_t>(z)] * g[static_cast<std::size_t>(z)];
                }
                const bool inside =
                    std::find(region.begin(), region.end(), z) != region.end();
                worst = std::max(worst, std::abs(sum - (inside ? 1.0 : 0.0)));
            }
        }
        record("cutoff_profile_identity", worst, 1e-12);
    }

    // Interaction locality on random aligned cut pairs.
    {
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const Cut a = random_aligned_cut(config.strip, rng);
            const Cut b = random_aligned_cut(config.strip, rng);
            std::vector<int> overlap;
            for (int x = 0; x < config.strip.sites; ++x) {
                if (a.height(x) == b.height(x)) overlap.push_back(x);
            }
            if (overlap.empty()) continue;
            std::vector<int> subset;
            for (int x : overlap) {
                if (rng() % 2 == 0) subset.push_back(x);
            }
            if (subset.empty()) subset.push_back(overlap[rng() % overlap.size()]);
            const int slot = static_cast<int>(rng() % config.params.particles());
            worst = std::max(worst, circuit.verify_interaction_locality(a, b, subset, slot));
        }
        record("interaction_locality", worst, 1e-12);
    }

    // Collapse-operator ordering invariance across admissible sequences.
    {
        double worst = 0.0;
        if (count_cells(config.params.flashes) <= 12) {
            const auto sequences = enumerate_admissible_sequences(config.params.flashes);
            const auto configs = enumerate_configs(instance, config.max_configs);
            for (int trial = 0; trial < 8; ++trial) {
                const FlashConfig& pick = configs[rng() % configs.size()];
                const RealizedConfig rc =
                    realize(pick, config.params, config.seeds, config.strip);
                std::vector<Mat> ls;
                for (const auto& seq : sequences) {
                    ls.push_back(big_L(rc, config.params, circuit, seq));
                }
                for (std::size_t i = 0; i < ls.size(); ++i) {
                    for (std::size_t j = i + 1; j < ls.size(); ++j) {
                        worst = std::max(worst, operator_norm(ls[i] - ls[j]));
                    }
                }
            }
        }
        record("ordering_invariance", worst, 1e-10);
    }

    // POVM normalization: per-state total and the operator identity.
    {
        const Vec psi0 = make_initial_state(config);
        double worst_total = 0.0;
        try {
            const JointDistribution dist =
                joint_distribution(psi0, instance, circuit, config.max_configs, threads);
            worst_total = std::abs(dist.total - 1.0);
        } catch (const std::exception&) {
            worst_total = 1.0;
        }
        record("normalization_total", worst_total, 1e-8);
        const Mat sum = povm_sum(instance, circuit, config.max_configs, threads);
        record("povm_sum_identity",
               operator_norm(sum - Mat::Identity(sum.rows(), sum.cols())), 1e-8);
    }

    json out = header(config);
    out["checks"] = checks;
    out["pass"] = all_ok;
    write_file_atomic(out_dir + "/verify.json", out.dump(2) + "\n");
    return all_ok ? 0 : 1;
}

int run_simulate(const RunConfig& config, const std::string& out_dir, std::ostream& log,
                 int threads) {
    log_run(config, log, "simulate");
    ensure_dir(out_dir);
    const ModelInstance instance = make_instance(config);
    const Circuit circuit(config.strip, make_gate_params(config), config.params.particles());
    const Vec psi0 = make_initial_state(config);
    const JointDistribution dist =
        joint_distribution(psi0, instance, circuit, config.max_configs, threads);

    json out = header(config);
    out["total"] = dist.total;
    json entries = json::array();
    for (const JointEntry& e : dist.entries) {
        json entry;
        entry["flashes"] = config_json(e.config);
        entry["probability"] = e.probability;
        entries.push_back(std::move(entry));
    }
    out["entries"] = entries;
    write_file_atomic(out_dir + "/distribution.json", out.dump(2) + "\n");

    const auto samples = sample_flashes(dist, config.rng_seed, config.samples);
    std::ostringstream csv;
    csv << "sample,particle,flash_index,band,site,time\n";
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const RealizedConfig rc = realize(samples[s], config.params, config.seeds, config.strip);
        for (std::size_t i = 0; i < samples[s].size(); ++i) {
            for (std::size_t k = 0; k < samples[s][i].size(); ++k) {
                csv << s << ',' << i << ',' << k + 1 << ',' << samples[s][i][k].band << ','
                    << samples[s][i][k].site << ',' << rc.vertices[i][k].t << "\n";
            }
        }
    }
    write_file_atomic(out_dir + "/samples.csv", csv.str());
    log << "  wrote distribution.json (" << dist.entries.size() << " configs, total="
        << format_float(dist.total) << ") and samples.csv (" << samples.size() << " samples)\n";
    return 0;
}

int run_enumerate_cells(const RunConfig& config, const std::string& out_dir, std::ostream& log) {
    log_run(config, log, "enumerate-cells");
    ensure_dir(out_dir);
    // Representative geometry: every flash in band 1, directly above its seed.
    FlashConfig representative(config.params.particles());
    for (int i = 0; i < config.params.particles(); ++i) {
        for (int k = 0; k < config.params.flashes[i]; ++k) {
            representative[i].push_back(Flash{1, config.seeds[i].x});
        }
    }
    const RealizedConfig rc = realize(representative, config.params, config.seeds, config.strip);

    json out = header(config);
    out["cell_count"] = count_cells(config.params.flashes);
    json cuts = json::array();
    for (int i = 0; i < rc.complex.particles(); ++i) {
        for (int k = 1; k <= rc.complex.flash_count(i); ++k) {
            json c;
            c["particle"] = i;
            c["flash_index"] = k;
            c["heights"] = rc.complex.cut(i, k).heights();
            json cells3 = json::array();
            for (int x = 0; x < config.strip.sites; ++x) {
                const Event v{rc.complex.cut(i, k).height(x), x};
                cells3.push_back(locate_3cell(i, k, v, rc.complex).k);
            }
            c["vertex_3cell"] = cells3;
            cuts.push_back(std::move(c));
        }
    }
    out["cuts"] = cuts;
    json sequences = json::array();
    for (const auto& seq : enumerate_admissible_sequences(config.params.flashes)) {
        json s = json::array();
        for (const Cell4& k : seq) s.push_back(k);
        sequences.push_back(std::move(s));
    }
    out["admissible_sequences"] = sequences;
    out["admissible_sequence_count"] = sequences.size();
    write_file_atomic(out_dir + "/cells.json", out.dump(2) + "\n");
    log << "  " << count_cells(config.params.flashes) << " cells, " << sequences.size()
        << " admissible sequences\n";
    return 0;
}

int run_compare_noninteracting(const RunConfig& config, const std::string& out_dir,
                               std::ostream& log) {
    log_run(config, log, "compare-noninteracting");
    if (config.gamma != 0.0) {
        throw std::invalid_argument("compare-noninteracting: config must set gamma = 0");
    }
    ensure_dir(out_dir);
    const ModelInstance instance = make_instance(config);
    const GateParams params = make_gate_params(config);
    const Circuit circuit(config.strip, params, config.params.particles());
    const Vec psi0 = make_initial_state(config);
    const JointDistribution general =
        joint_distribution(psi0, instance, circuit, config.max_configs);
    const JointDistribution reference =
        noninteracting_reference(psi0, instance, params, config.max_configs);
    const double tv = total_variation(general, reference);

    json out = header(config);
    out["total_variation"] = tv;
    if (config.params.particles() == 2) {
        out["mutual_information"] = mutual_information(general, 0, 1);
    }
    write_file_atomic(out_dir + "/compare_noninteracting.json", out.dump(2) + "\n");
    log << "  total_variation=" << format_float(tv) << "\n";
    return 0;
}

int run_flat_limit(const RunConfig& config, const std::string& out_dir, std::ostream& log) {
    log_run(config, log, "flat-limit");
    ensure_dir(out_dir);
    const ModelInstance instance = make_instance(config);
    const Circuit circuit(config.strip, make_gate_params(config), config.params.particles());
    const Vec psi0 = make_initial_state(config);
    const JointDistribution general =
        joint_distribution(psi0, instance, circuit, config.max_configs);
    const JointDistribution reference =
        flat_limit_reference(psi0, instance, circuit, config.max_configs);
    const double tv = total_variation(general, reference);

    json out = header(config);
    out["total_variation"] = tv;
    write_file_atomic(out_dir + "/flat_limit.json", out.dump(2) + "\n");
    log << "  total_variation=" << format_float(tv) << "\n";
    return 0;
}

int run_param_independence(const RunConfig& config, const std::string& out_dir,
                           std::ostream& log) {
    log_run(config, log, "param-independence");
    if (!config.has_probe) {
        throw std::invalid_argument("param-independence: config has no param_independence section");
    }
    ensure_dir(out_dir);
    const ModelInstance instance = make_instance(config);
    const Cut surface(config.probe_surface, config.strip);
    const Vec psi0 = make_initial_state(config);
    const double tv = parameter_independence_probe(
        surface, make_potential(config, config.potential),
        make_potential(config, config.potential_b), psi0, instance, config.theta, config.gamma,
        config.max_configs);

    json out = header(config);
    out["total_variation_below_surface"] = tv;
    write_file_atomic(out_dir + "/param_independence.json", out.dump(2) + "\n");
    log << "  total_variation_below_surface=" << format_float(tv) << "\n";
    return 0;
}

}  // namespace flashlat
