#include "flashlat/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace flashlat {

namespace {

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (long i = 0; i < a.rows(); ++i) {
        for (long j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Vec kron_vec(const Vec& a, const Vec& b) {
    Vec out(a.size() * b.size());
    for (long i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

// 53-bit uniform in [0,1); stable across standard libraries.
double canonical_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<std::pair<int, int>> flash_list(const ModelParams& params) {
    std::vector<std::pair<int, int>> list;
    for (int i = 0; i < params.particles(); ++i) {
        for (int k = 1; k <= params.flashes[i]; ++k) list.emplace_back(i, k);
    }
    return list;
}

void run_chunked(std::uint64_t count, int threads, const std::function<void(std::uint64_t)>& body) {
    if (threads <= 1) {
        for (std::uint64_t idx = 0; idx < count; ++idx) body(idx);
        return;
    }
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (count + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        const std::uint64_t lo = w * chunk;
        const std::uint64_t hi = std::min<std::uint64_t>(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            for (std::uint64_t idx = lo; idx < hi; ++idx) body(idx);
        });
    }
    for (std::thread& t : pool) t.join();
}

}  // namespace

void ModelInstance::validate() const {
    params.validate();
    if (strip.sites < 2 || strip.t_max < 1) {
        throw std::invalid_argument("ModelInstance: strip must have >= 2 sites and t_max >= 1");
    }
    if (static_cast<int>(seeds.size()) != params.particles()) {
        throw std::invalid_argument("ModelInstance: seed count must match particle count");
    }
    for (const Event& s : seeds) {
        if (s.x < 0 || s.x >= strip.sites || s.t > strip.t_max) {
            throw std::invalid_argument("ModelInstance: seed outside the strip");
        }
    }
}

std::uint64_t ModelInstance::config_count() const {
    const std::uint64_t radix =
        static_cast<std::uint64_t>(params.bands) * static_cast<std::uint64_t>(strip.sites);
    std::uint64_t total = 1;
    for (int i = 0; i < params.total_flashes(); ++i) {
        if (total > (static_cast<std::uint64_t>(1) << 62) / radix) {
            return static_cast<std::uint64_t>(1) << 62;  // saturate
        }
        total *= radix;
    }
    return total;
}

std::vector<FlashConfig> enumerate_configs(const ModelInstance& instance,
                                           std::uint64_t max_configs) {
    instance.validate();
    const std::uint64_t count = instance.config_count();
    if (count > max_configs) {
        throw std::runtime_error(
            "enumerate_configs: " + std::to_string(count) + " configs exceed the guard of " +
            std::to_string(max_configs) + "; reduce bands, sites or flash counts");
    }
    const auto list = flash_list(instance.params);
    const std::uint64_t radix = static_cast<std::uint64_t>(instance.params.bands) *
                                static_cast<std::uint64_t>(instance.strip.sites);
    std::vector<FlashConfig> configs;
    configs.reserve(count);
    for (std::uint64_t c = 0; c < count; ++c) {
        FlashConfig config(instance.params.particles());
        for (int i = 0; i < instance.params.particles(); ++i) {
            config[i].reserve(instance.params.flashes[i]);
        }
        std::uint64_t rest = c;
        for (std::size_t j = list.size(); j-- > 0;) {
            const std::uint64_t digit = rest % radix;
            rest /= radix;
            const auto [i, k] = list[j];
            (void)k;
            config[i].insert(config[i].begin(),
                             Flash{static_cast<int>(digit / instance.strip.sites) + 1,
                                   static_cast<int>(digit % instance.strip.sites)});
        }
        configs.push_back(std::move(config));
    }
    return configs;
}

JointDistribution joint_distribution(const Vec& psi0, const ModelInstance& instance,
                                     const Circuit& circuit, std::uint64_t max_configs,
                                     int threads) {
    const std::vector<FlashConfig> configs = enumerate_configs(instance, max_configs);
    const AdmissibleSequence seq = canonical_sequence(instance.params.flashes);
    std::vector<double> probs(configs.size(), 0.0);
    run_chunked(configs.size(), threads, [&](std::uint64_t idx) {
        const RealizedConfig rc =
            realize(configs[idx], instance.params, instance.seeds, instance.strip);
        const Vec l_psi = big_L_apply(rc, instance.params, circuit, seq, psi0);
        probs[idx] = config_weight(rc, instance.params) * l_psi.squaredNorm();
    });
    JointDistribution dist;
    dist.entries.reserve(configs.size());
    double total = 0.0;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        total += probs[i];
        dist.entries.push_back(JointEntry{configs[i], probs[i]});
    }
    dist.total = total;
    if (std::abs(total - 1.0) > 1e-6) {
        throw std::runtime_error("joint_distribution: total probability " +
                                 std::to_string(total) +
                                 " deviates from 1; a discretization invariant is broken");
    }
    return dist;
}

Mat povm_sum(const ModelInstance& instance, const Circuit& circuit, std::uint64_t max_configs,
             int threads) {
    const std::vector<FlashConfig> configs = enumerate_configs(instance, max_configs);
    const AdmissibleSequence seq = canonical_sequence(instance.params.flashes);
    const long dim = circuit.dim();
    std::vector<Mat> partial(std::max(threads, 1), Mat::Zero(dim, dim));
    const std::uint64_t chunk = (configs.size() + std::max(threads, 1) - 1) / std::max(threads, 1);
    run_chunked(configs.size(), threads, [&](std::uint64_t idx) {
        const RealizedConfig rc =
            realize(configs[idx], instance.params, instance.seeds, instance.strip);
        partial[threads <= 1 ? 0 : idx / chunk] += density_op(rc, instance.params, circuit, seq);
    });
    Mat sum = Mat::Zero(dim, dim);
    for (const Mat& p : partial) sum += p;
    return sum;
}

std::vector<FlashConfig> sample_flashes(const JointDistribution& dist, std::uint64_t rng_seed,
                                        int count) {
    std::mt19937_64 rng(rng_seed);
    std::vector<FlashConfig> samples;
    samples.reserve(static_cast<std::size_t>(count));
    for (int s = 0; s < count; ++s) {
        const double target = canonical_uniform(rng) * dist.total;
        double cum = 0.0;
        std::size_t pick = dist.entries.size() - 1;
        for (std::size_t i = 0; i < dist.entries.size(); ++i) {
            cum += dist.entries[i].probability;
            if (target < cum) {
                pick = i;
                break;
            }
        }
        samples.push_back(dist.entries[pick].config);
    }
    return samples;
}

namespace {

// Vertices of a (possibly partial) flash history.
std::vector<std::vector<Event>> chain_vertices(const FlashConfig& config,
                                               const ModelParams& params,
                                               const std::vector<Event>& seeds,
                                               const Strip& strip) {
    std::vector<std::vector<Event>> vertices(config.size());
    for (std::size_t i = 0; i < config.size(); ++i) {
        Event base = seeds[i];
        for (const Flash& f : config[i]) {
            const Cut cut =
                align_staircase(hyperboloid_cut(base, f.band * params.delta_s, strip), strip);
            base = Event{cut.height(f.site), f.site};
            vertices[i].push_back(base);
        }
    }
    return vertices;
}

bool extends_prefix(const FlashConfig& full, const FlashConfig& prefix) {
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        for (std::size_t k = 0; k < prefix[i].size(); ++k) {
            if (!(full[i][k] == prefix[i][k])) return false;
        }
    }
    return true;
}

}  // namespace

ConditionedState conditional_state(const Cut& surface, const FlashConfig& past, const Vec& psi0,
                                   const ModelInstance& instance, const Circuit& circuit,
                                   std::uint64_t max_configs) {
    if (static_cast<int>(past.size()) != instance.params.particles()) {
        throw std::invalid_argument("conditional_state: past must cover every particle (chains "
                                    "may be empty)");
    }
    const auto past_vertices =
        chain_vertices(past, instance.params, instance.seeds, instance.strip);
    for (std::size_t i = 0; i < past.size(); ++i) {
        if (past[i].size() > static_cast<std::size_t>(instance.params.flashes[i])) {
            throw std::invalid_argument("conditional_state: past chain longer than flash count");
        }
        for (const Event& v : past_vertices[i]) {
            if (v.t > surface.height(v.x)) {
                throw std::invalid_argument(
                    "conditional_state: past flash lies above the surface");
            }
        }
    }

    const AdmissibleSequence seq = canonical_sequence(instance.params.flashes);
    const long dim = circuit.dim();
    Mat w_sq = Mat::Zero(dim, dim);
    bool any = false;
    for (const FlashConfig& config : enumerate_configs(instance, max_configs)) {
        if (!extends_prefix(config, past)) continue;
        const RealizedConfig rc =
            realize(config, instance.params, instance.seeds, instance.strip);
        bool future_ok = true;
        for (std::size_t i = 0; i < config.size() && future_ok; ++i) {
            for (std::size_t k = past[i].size(); k < config[i].size(); ++k) {
                const Event& v = rc.vertices[i][k];
                if (v.t <= surface.height(v.x)) {
                    future_ok = false;
                    break;
                }
            }
        }
        if (!future_ok) continue;
        any = true;
        w_sq += density_op(rc, instance.params, circuit, seq);
    }
    if (!any) throw std::runtime_error("conditional_state: conditioning on a null event");

    const CutSpace space0 = circuit.space_on(flat_cut(0, instance.strip));
    const DenseOp w = hermitian_sqrt(DenseOp{std::move(w_sq), space0, space0});
    Vec collapsed = w.matrix * psi0;
    const double norm = collapsed.norm();
    if (norm < 1e-12) {
        throw std::runtime_error("conditional_state: conditioning on a null event");
    }
    collapsed /= norm;
    StateVec psi = circuit.evolve(StateVec{std::move(collapsed), space0}, surface);
    return ConditionedState{surface, past, std::move(psi), w, norm * norm};
}

double conditional_probability(const ConditionedState& state, const FlashConfig& completion,
                               const ModelInstance& instance, const Circuit& circuit) {
    if (!extends_prefix(completion, state.past)) {
        throw std::invalid_argument("conditional_probability: completion does not extend the "
                                    "conditioned past");
    }
    const RealizedConfig rc =
        realize(completion, instance.params, instance.seeds, instance.strip);
    const Mat d = density_op(rc, instance.params, circuit,
                             canonical_sequence(instance.params.flashes));
    // Back to the initial surface, then undo one factor of W on its support.
    const Vec phi = circuit.unitary_below(state.surface).adjoint() * state.psi.amplitudes;
    Eigen::SelfAdjointEigenSolver<Mat> solver(state.w.matrix);
    const double cutoff = 1e-10 * std::max(1.0, solver.eigenvalues().maxCoeff());
    Vec inv = Vec::Zero(phi.size());
    const Mat& basis = solver.eigenvectors();
    const Vec coeffs = basis.adjoint() * phi;
    for (long i = 0; i < coeffs.size(); ++i) {
        if (solver.eigenvalues()(i) > cutoff) {
            inv += (coeffs(i) / solver.eigenvalues()(i)) * basis.col(i);
        }
    }
    return std::real((inv.adjoint() * d * inv)(0, 0));
}

Mat simple_case_L(const FlashConfig& config, const ModelInstance& instance,
                  const Circuit& circuit) {
    if (instance.params.particles() != 2 || instance.params.flashes != std::vector<int>{1, 1}) {
        throw std::invalid_argument("simple_case_L: needs two particles with one flash each");
    }
    const RealizedConfig rc = realize(config, instance.params, instance.seeds, instance.strip);
    const Cut& h1 = rc.complex.cut(0, 1);
    const Cut& h2 = rc.complex.cut(1, 1);
    const Cell3 c1 = locate_3cell(0, 1, rc.vertex(0, 1), rc.complex);
    const Cell3 c2 = locate_3cell(1, 1, rc.vertex(1, 1), rc.complex);
    const std::vector<double> g1 = cutoff_profile(h1, cell3_sites(c1, rc.complex),
                                                  rc.vertex(0, 1).x, instance.params.sigma,
                                                  instance.params.metric);
    const std::vector<double> g2 = cutoff_profile(h2, cell3_sites(c2, rc.complex),
                                                  rc.vertex(1, 1).x, instance.params.sigma,
                                                  instance.params.metric);
    const Mat& v1 = circuit.unitary_below(h1);
    const Mat& v2 = circuit.unitary_below(h2);
    const Vec d1 = mult_diagonal(circuit.space_on(h1), 0,
                                 [&](int x) { return g1[static_cast<std::size_t>(x)]; })
                       .cast<std::complex<double>>();
    const Vec d2 = mult_diagonal(circuit.space_on(h2), 1,
                                 [&](int x) { return g2[static_cast<std::size_t>(x)]; })
                       .cast<std::complex<double>>();
    const bool first_in_past = c1.k[1] == 0;  // flash 1 below particle 2's hyperboloid
    if (first_in_past) {
        return v2.adjoint() * (d2.asDiagonal() * (v2 * v1.adjoint()) * d1.asDiagonal()) * v1;
    }
    return v1.adjoint() * (d1.asDiagonal() * (v1 * v2.adjoint()) * d2.asDiagonal()) * v2;
}

JointDistribution noninteracting_reference(const Vec& psi0, const ModelInstance& instance,
                                           const GateParams& params,
                                           std::uint64_t max_configs) {
    if (params.gamma != 0.0) {
        throw std::invalid_argument("noninteracting_reference: requires gamma = 0");
    }
    const Circuit single(instance.strip, params, 1);
    const std::vector<FlashConfig> configs = enumerate_configs(instance, max_configs);
    JointDistribution dist;
    dist.entries.reserve(configs.size());
    double total = 0.0;
    for (const FlashConfig& config : configs) {
        const RealizedConfig rc =
            realize(config, instance.params, instance.seeds, instance.strip);
        Mat product;  // tensor product over particles of the per-particle chains
        for (int i = 0; i < instance.params.particles(); ++i) {
            const long sdim = single.dim();
            Mat chain = Mat::Identity(sdim, sdim);
            for (int k = 1; k <= instance.params.flashes[i]; ++k) {
                const Cut& cut = rc.complex.cut(i, k);
                const Cell3 cell = locate_3cell(i, k, rc.vertex(i, k), rc.complex);
                const std::vector<double> g =
                    cutoff_profile(cut, cell3_sites(cell, rc.complex), rc.vertex(i, k).x,
                                   instance.params.sigma, instance.params.metric);
                const Mat& u = single.unitary_below(cut);
                const Vec diag = mult_diagonal(single.space_on(cut), 0,
                                               [&](int x) {
                                                   return g[static_cast<std::size_t>(x)];
                                               })
                                     .cast<std::complex<double>>();
                chain = (u.adjoint() * (diag.asDiagonal() * u)) * chain;
            }
            product = i == 0 ? chain : kron(product, chain);
        }
        const double prob =
            config_weight(rc, instance.params) * (product * psi0).squaredNorm();
        total += prob;
        dist.entries.push_back(JointEntry{config, prob});
    }
    dist.total = total;
    return dist;
}

JointDistribution flat_limit_reference(const Vec& psi0, const ModelInstance& instance,
                                       const Circuit& circuit, std::uint64_t max_configs) {
    const std::vector<FlashConfig> configs = enumerate_configs(instance, max_configs);
    JointDistribution dist;
    dist.entries.reserve(configs.size());
    double total = 0.0;
    for (const FlashConfig& config : configs) {
        const RealizedConfig rc =
            realize(config, instance.params, instance.seeds, instance.strip);
        struct Factor {
            int height;
            int particle;
            int k;
        };
        std::vector<Factor> factors;
        for (int i = 0; i < instance.params.particles(); ++i) {
            for (int k = 1; k <= instance.params.flashes[i]; ++k) {
                const Cut& cut = rc.complex.cut(i, k);
                for (int x = 0; x + 1 < cut.sites(); ++x) {
                    if (cut.height(x) != cut.height(x + 1)) {
                        throw std::runtime_error(
                            "flat_limit_reference: cut is not flat; move the seeds deeper or "
                            "enlarge delta_s");
                    }
                }
                factors.push_back(Factor{cut.height(0), i, k});
            }
        }
        std::sort(factors.begin(), factors.end(), [](const Factor& a, const Factor& b) {
            if (a.height != b.height) return a.height < b.height;
            if (a.particle != b.particle) return a.particle < b.particle;
            return a.k < b.k;
        });
        // Textbook chain: Heisenberg-evolved multiplication by the full-slice
        // normalized Gaussian at each flash, earliest slice rightmost.
        Vec psi = psi0;
        for (const Factor& f : factors) {
            const Cut slice = flat_cut(f.height, instance.strip);
            std::vector<double> g(static_cast<std::size_t>(instance.strip.sites));
            const int center = rc.vertex(f.particle, f.k).x;
            for (int z = 0; z < instance.strip.sites; ++z) {
                double norm_sq = 0.0;
                for (int w = 0; w < instance.strip.sites; ++w) {
                    norm_sq += std::exp(-static_cast<double>((z - w) * (z - w)) /
                                        (2.0 * instance.params.sigma * instance.params.sigma));
                }
                g[static_cast<std::size_t>(z)] =
                    std::exp(-static_cast<double>((z - center) * (z - center)) /
                             (4.0 * instance.params.sigma * instance.params.sigma)) /
                    std::sqrt(norm_sq);
            }
            const Mat& u = circuit.unitary_below(slice);
            const Vec diag = mult_diagonal(circuit.space_on(slice), f.particle,
                                           [&](int x) { return g[static_cast<std::size_t>(x)]; })
                                 .cast<std::complex<double>>();
            psi = u.adjoint() * (diag.asDiagonal() * (u * psi));
        }
        const double prob = config_weight(rc, instance.params) * psi.squaredNorm();
        total += prob;
        dist.entries.push_back(JointEntry{config, prob});
    }
    dist.total = total;
    return dist;
}

double parameter_independence_probe(const Cut& surface, const PotentialTable& field_a,
                                    const PotentialTable& field_b, const Vec& psi0,
                                    const ModelInstance& instance, double theta, double gamma,
                                    std::uint64_t max_configs) {
    for (int t = 0; t <= instance.strip.t_max; ++t) {
        for (int x = 0; x < instance.strip.sites; ++x) {
            if (t <= surface.height(x) && field_a.at(t, x) != field_b.at(t, x)) {
                throw std::invalid_argument(
                    "parameter_independence_probe: fields differ at or below the surface");
            }
        }
    }
    const Circuit circuit_a(instance.strip, GateParams{theta, gamma, field_a},
                            instance.params.particles());
    const Circuit circuit_b(instance.strip, GateParams{theta, gamma, field_b},
                            instance.params.particles());
    const AdmissibleSequence seq = canonical_sequence(instance.params.flashes);
    std::map<std::string, double> marg_a, marg_b;
    for (const FlashConfig& config : enumerate_configs(instance, max_configs)) {
        const RealizedConfig rc =
            realize(config, instance.params, instance.seeds, instance.strip);
        std::ostringstream key;
        for (int i = 0; i < instance.params.particles(); ++i) {
            for (int k = 1; k <= instance.params.flashes[i]; ++k) {
                const Event& v = rc.vertex(i, k);
                if (v.t <= surface.height(v.x)) {
                    key << '(' << i << ',' << k << ',' << rc.flashes[i][k - 1].band << ','
                        << v.x << ')';
                }
            }
        }
        const double w = config_weight(rc, instance.params);
        marg_a[key.str()] +=
            w * big_L_apply(rc, instance.params, circuit_a, seq, psi0).squaredNorm();
        marg_b[key.str()] +=
            w * big_L_apply(rc, instance.params, circuit_b, seq, psi0).squaredNorm();
    }
    double tv = 0.0;
    for (const auto& [key, pa] : marg_a) {
        const auto it = marg_b.find(key);
        tv += std::abs(pa - (it == marg_b.end() ? 0.0 : it->second));
    }
    for (const auto& [key, pb] : marg_b) {
        if (marg_a.find(key) == marg_a.end()) tv += pb;
    }
    return 0.5 * tv;
}

std::string config_key(const FlashConfig& config) {
    std::ostringstream key;
    for (std::size_t i = 0; i < config.size(); ++i) {
        for (std::size_t k = 0; k < config[i].size(); ++k) {
            key << '(' << i << ',' << k + 1 << ',' << config[i][k].band << ','
                << config[i][k].site << ')';
        }
    }
    return key.str();
}

double mutual_information(const JointDistribution& dist, int particle_a, int particle_b) {
    std::map<std::string, double> pa, pb;
    std::map<std::pair<std::string, std::string>, double> pab;
    for (const JointEntry& e : dist.entries) {
        std::ostringstream ka, kb;
        for (const Flash& f : e.config[static_cast<std::size_t>(particle_a)]) {
            ka << f.band << ':' << f.site << ';';
        }
        for (const Flash& f : e.config[static_cast<std::size_t>(particle_b)]) {
            kb << f.band << ':' << f.site << ';';
        }
        pa[ka.str()] += e.probability;
        pb[kb.str()] += e.probability;
        pab[{ka.str(), kb.str()}] += e.probability;
    }
    double mi = 0.0;
    for (const auto& [key, p] : pab) {
        if (p <= 0.0) continue;
        mi += p * std::log(p / (pa[key.first] * pb[key.second]));
    }
    return mi;
}

double total_variation(const JointDistribution& a, const JointDistribution& b) {
    if (a.entries.size() != b.entries.size()) {
        throw std::invalid_argument("total_variation: distributions have different supports");
    }
    double tv = 0.0;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        if (!(a.entries[i].config == b.entries[i].config)) {
            throw std::invalid_argument("total_variation: enumeration orders differ");
        }
        tv += std::abs(a.entries[i].probability - b.entries[i].probability);
    }
    return 0.5 * tv;
}

std::map<std::string, double> marginal_over_last_flash(const JointDistribution& dist,
                                                       int particle) {
    std::map<std::string, double> marg;
    for (const JointEntry& e : dist.entries) {
        FlashConfig reduced = e.config;
        reduced[static_cast<std::size_t>(particle)].pop_back();
        marg[config_key(reduced)] += e.probability;
    }
    return marg;
}

Vec product_gaussian_state(const ModelInstance& instance, const std::vector<int>& centers,
                           double width, int spin) {
    if (static_cast<int>(centers.size()) != instance.params.particles()) {
        throw std::invalid_argument("product_gaussian_state: one center per particle");
    }
    Vec psi;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        Vec single = Vec::Zero(2L * instance.strip.sites);
        for (int x = 0; x < instance.strip.sites; ++x) {
            const double dx = x - centers[i];
            single(2L * x + spin) = std::exp(-dx * dx / (4.0 * width * width));
        }
        single.normalize();
        psi = i == 0 ? single : kron_vec(psi, single);
    }
    return psi;
}

Vec entangled_pair_state(const ModelInstance& instance, const std::vector<int>& branch_a,
                         const std::vector<int>& branch_b, int spin) {
    if (instance.params.particles() != 2 || branch_a.size() != 2 || branch_b.size() != 2) {
        throw std::invalid_argument("entangled_pair_state: needs two particles and two branches");
    }
    for (int site : {branch_a[0], branch_a[1], branch_b[0], branch_b[1]}) {
        if (site < 0 || site >= instance.strip.sites) {
            throw std::invalid_argument("entangled_pair_state: branch site outside the strip");
        }
    }
    const long sdim = 2L * instance.strip.sites;
    Vec psi = Vec::Zero(sdim * sdim);
    psi((2L * branch_a[0] + spin) * sdim + 2L * branch_a[1] + spin) += 1.0;
    psi((2L * branch_b[0] + spin) * sdim + 2L * branch_b[1] + spin) += 1.0;
    psi.normalize();
    return psi;
}

Vec random_state(long dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Vec psi(dim);
    for (long i = 0; i < dim; ++i) {
        const double re = 2.0 * canonical_uniform(rng) - 1.0;
        const double im = 2.0 * canonical_uniform(rng) - 1.0;
        psi(i) = std::complex<double>(re, im);
    }
    psi.normalize();
    return psi;
}

}  // namespace flashlat
