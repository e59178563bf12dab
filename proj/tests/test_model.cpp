#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>
#include <map>

#include "flashlat/model.hpp"

using namespace flashlat;

namespace {

ModelInstance two_particle_instance() {
    ModelInstance instance;
    instance.strip = Strip{7, 10};
    instance.params.sigma = 1.5;
    instance.params.tau_hat = 4.0;
    instance.params.delta_s = 2.0;
    instance.params.bands = 2;
    instance.params.flashes = {1, 1};
    instance.seeds = {{0, 2}, {0, 4}};
    return instance;
}

GateParams dynamics(const Strip& strip, double theta, double gamma) {
    GateParams params;
    params.theta = theta;
    params.gamma = gamma;
    params.potential = PotentialTable(strip.sites, strip.t_max);
    return params;
}

double map_total_variation(const std::map<std::string, double>& a,
                           const std::map<std::string, double>& b) {
    double tv = 0.0;
    for (const auto& [key, pa] : a) {
        const auto it = b.find(key);
        tv += std::abs(pa - (it == b.end() ? 0.0 : it->second));
    }
    for (const auto& [key, pb] : b) {
        if (a.find(key) == a.end()) tv += pb;
    }
    return 0.5 * tv;
}

}  // namespace

TEST_CASE("single flash with one band is normalized essentially exactly") {
    ModelInstance instance;
    instance.strip = Strip{5, 8};
    instance.params.flashes = {1};
    instance.params.bands = 1;
    instance.params.sigma = 1.0;
    instance.params.delta_s = 2.0;
    instance.params.tau_hat = 3.0;
    instance.seeds = {{0, 2}};
    const Circuit circuit(instance.strip, dynamics(instance.strip, 0.3, 0.0), 1);
    const Vec psi0 = random_state(circuit.dim(), 99);
    const JointDistribution dist = joint_distribution(psi0, instance, circuit);
    CHECK(std::abs(dist.total - 1.0) <= 1e-12);
}

TEST_CASE("interacting two-particle model is normalized and the POVM sums to identity") {
    const ModelInstance instance = two_particle_instance();
    const Circuit circuit(instance.strip, dynamics(instance.strip, 0.4, 0.7), 2);
    for (std::uint64_t seed : {1ull, 2ull}) {
        const Vec psi0 = random_state(circuit.dim(), seed);
        const JointDistribution dist = joint_distribution(psi0, instance, circuit);
        CHECK(std::abs(dist.total - 1.0) <= 1e-8);
        for (const JointEntry& e : dist.entries) CHECK(e.probability >= -1e-14);
    }
    const Mat sum = povm_sum(instance, circuit);
    CHECK(operator_norm(sum - Mat::Identity(sum.rows(), sum.cols())) <= 1e-8);
}

TEST_CASE("the induced-length metric keeps the model normalized") {
    ModelInstance instance = two_particle_instance();
    instance.params.metric = ProfileMetric::Minkowski;
    const Circuit circuit(instance.strip, dynamics(instance.strip, 0.4, 0.7), 2);
    const Vec psi0 = random_state(circuit.dim(), 3);
    const JointDistribution dist = joint_distribution(psi0, instance, circuit);
    CHECK(std::abs(dist.total - 1.0) <= 1e-8);

    // The two metrics weight staircase steps differently, so the
    // distributions genuinely differ.
    ModelInstance steps = two_particle_instance();
    const JointDistribution ref = joint_distribution(psi0, steps, circuit);
    CHECK(total_variation(dist, ref) > 1e-6);
}

TEST_CASE("worker threads do not change the result") {
    const ModelInstance instance = two_particle_instance();
    const Circuit circuit(instance.strip, dynamics(instance.strip, 0.4, 0.7), 2);
    const Vec psi0 = random_state(circuit.dim(), 7);
    const JointDistribution serial = joint_distribution(psi0, instance, circuit, 100000, 1);
    const JointDistribution parallel = joint_distribution(psi0, instance, circuit, 100000, 3);
    REQUIRE(serial.entries.size() == parallel.entries.size());
    for (std::size_t i = 0; i < serial.entries.size(); ++i) {
        CHECK(serial.entries[i].probability == parallel.entries[i].probability);
    }
}

TEST_CASE("config-space guard") {
    ModelInstance instance = two_particle_instance();
    instance.params.flashes = {3, 3};
    CHECK_THROWS_AS(enumerate_configs(instance, 1000), std::runtime_error);
}

TEST_CASE("sampling") {
    SUBCASE("point mass always returns its config") {
        JointDistribution dist;
        dist.entries.push_back(JointEntry{{{Flash{1, 3}}}, 1.0});
        dist.total = 1.0;
        for (const FlashConfig& s : sample_flashes(dist, 5, 50)) {
            CHECK(s == dist.entries[0].config);
        }
    }

    SUBCASE("uniform frequencies within the binomial bound") {
        JointDistribution dist;
        for (int site = 0; site < 4; ++site) {
            dist.entries.push_back(JointEntry{{{Flash{1, site}}}, 0.25});
        }
        dist.total = 1.0;
        const auto samples = sample_flashes(dist, 20240607, 40000);
        std::map<int, int> counts;
        for (const FlashConfig& s : samples) ++counts[s[0][0].site];
        for (int site = 0; site < 4; ++site) {
            CHECK(std::abs(counts[site] / 40000.0 - 0.25) <= 0.01);
        }
    }

    SUBCASE("fixed seed reproduces the sample sequence") {
        const ModelInstance instance = two_particle_instance();
        const Circuit circuit(instance.strip, dynamics(instance.strip, 0.4, 0.7), 2);
        const Vec psi0 = random_state(circuit.dim(), 11);
        const JointDistribution dist = joint_distribution(psi0, instance, circuit);
        const auto a = sample_flashes(dist, 123, 64);
        const auto b = sample_flashes(dist, 123, 64);
        CHECK(a == b);
        const auto c = sample_flashes(dist, 124, 64);
        CHECK(a != c);
    }
}

TEST_CASE("conditioning") {
    ModelInstance instance;
    instance.strip = Strip{5, 24};
    instance.params.sigma = 1.0;
    instance.params.tau_hat = 3.0;
    instance.params.delta_s = 2.0;
    instance.params.bands = 1;
    instance.params.flashes = {2};
    instance.seeds = {{0, 2}};
    const Circuit circuit(instance.strip, dynamics(instance.strip, 0.35, 0.0), 1);
    const Vec psi0 = product_gaussian_state(instance, {2}, 1.0, 1);
    const JointDistribution joint = joint_distribution(psi0, instance, circuit);

    SUBCASE("no past flashes on the initial surface returns psi0") {
        const ConditionedState state = conditional_state(
            flat_cut(0, instance.strip), {{}}, psi0, instance, circuit);
        CHECK((state.psi.amplitudes - psi0).norm() <= 1e-7);
        CHECK(state.event_probability == doctest::Approx(1.0).epsilon(1e-8));
    }

    SUBCASE("conditional probabilities match direct conditioning of the joint") {
        for (int z1 = 0; z1 < 5; ++z1) {
            const FlashConfig past{{Flash{1, z1}}};
            const RealizedConfig rc =
                realize({{Flash{1, z1}, Flash{1, 0}}}, instance.params, instance.seeds,
                        instance.strip);
            const Cut surface = flat_cut(rc.vertices[0][0].t, instance.strip);
            const ConditionedState state =
                conditional_state(surface, past, psi0, instance, circuit);

            double direct_marginal = 0.0;
            for (const JointEntry& e : joint.entries) {
                if (e.config[0][0] == past[0][0]) direct_marginal += e.probability;
            }
            CHECK(std::abs(state.event_probability - direct_marginal) <= 1e-8);

            for (int z2 = 0; z2 < 5; ++z2) {
                const FlashConfig completion{{Flash{1, z1}, Flash{1, z2}}};
                double direct = 0.0;
                for (const JointEntry& e : joint.entries) {
                    if (e.config == completion) direct += e.probability;
                }
                const double via_state =
                    conditional_probability(state, completion, instance, circuit);
                CHECK(std::abs(via_state - direct / direct_marginal) <= 1e-8);
            }
        }
    }

    SUBCASE("law of total probability over first-flash outcomes") {
        double total = 0.0;
        for (int z1 = 0; z1 < 5; ++z1) {
            const FlashConfig past{{Flash{1, z1}}};
            const RealizedConfig rc =
                realize({{Flash{1, z1}, Flash{1, 0}}}, instance.params, instance.seeds,
                        instance.strip);
            const Cut surface = flat_cut(rc.vertices[0][0].t, instance.strip);
            const ConditionedState state =
                conditional_state(surface, past, psi0, instance, circuit);
            total += state.event_probability;
        }
        CHECK(std::abs(total - 1.0) <= 1e-8);
    }

    SUBCASE("the wave function jumps when the surface crosses a flash") {
        const FlashConfig past{{Flash{1, 2}}};
        const RealizedConfig rc =
            realize({{Flash{1, 2}, Flash{1, 0}}}, instance.params, instance.seeds,
                    instance.strip);
        const int crossing = rc.vertices[0][0].t;
        const Cut below = flat_cut(crossing - 1, instance.strip);
        const Cut at = flat_cut(crossing, instance.strip);
        const ConditionedState before =
            conditional_state(below, {{}}, psi0, instance, circuit);
        const ConditionedState after = conditional_state(at, past, psi0, instance, circuit);
        const StateVec moved = circuit.evolve(before.psi, at);
        CHECK((moved.amplitudes - after.psi.amplitudes).norm() > 1e-3);
    }

    SUBCASE("conditioning on an impossible past is rejected") {
        ModelInstance tiny = instance;
        const Cut surface = flat_cut(0, tiny.strip);
        // First flash always lies strictly above t=0, so demanding it below
        // the initial surface is a null event.
        CHECK_THROWS(conditional_state(surface, {{Flash{1, 2}}}, psi0, tiny, circuit));
    }
}

TEST_CASE("explicit two-flash case split equals the general ordered product") {
    const ModelInstance instance = two_particle_instance();
    const Circuit circuit(instance.strip, dynamics(instance.strip, 0.4, 0.7), 2);
    const auto sequences = enumerate_admissible_sequences(instance.params.flashes);
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 50; ++trial) {
        const FlashConfig config{
            {Flash{1 + static_cast<int>(rng() % 2), static_cast<int>(rng() % 7)}},
            {Flash{1 + static_cast<int>(rng() % 2), static_cast<int>(rng() % 7)}}};
        const Mat simple = simple_case_L(config, instance, circuit);
        const RealizedConfig rc =
            realize(config, instance.params, instance.seeds, instance.strip);
        for (const auto& seq : sequences) {
            CHECK(operator_norm(simple - big_L(rc, instance.params, circuit, seq)) <= 1e-10);
        }
    }
}

TEST_CASE("first-flash normalization at fixed bands") {
    const ModelInstance instance = two_particle_instance();
    const Circuit circuit(instance.strip, dynamics(instance.strip, 0.4, 0.7), 2);
    const AdmissibleSequence seq = canonical_sequence(instance.params.flashes);
    // Sum of L^dagger L over both flash positions at fixed hyperboloids.
    for (int band1 : {1, 2}) {
        for (int band2 : {1, 2}) {
            Mat sum = Mat::Zero(circuit.dim(), circuit.dim());
            for (int z1 = 0; z1 < 7; ++z1) {
                for (int z2 = 0; z2 < 7; ++z2) {
                    const FlashConfig config{{Flash{band1, z1}}, {Flash{band2, z2}}};
                    const RealizedConfig rc =
                        realize(config, instance.params, instance.seeds, instance.strip);
                    const Mat l = big_L(rc, instance.params, circuit, seq);
                    sum += l.adjoint() * l;
                }
            }
            CHECK(operator_norm(sum - Mat::Identity(sum.rows(), sum.cols())) <= 1e-8);
        }
    }
}

TEST_CASE("non-interacting reduction") {
    ModelInstance instance = two_particle_instance();
    const GateParams params = dynamics(instance.strip, 0.4, 0.0);
    const Circuit circuit(instance.strip, params, 2);

    SUBCASE("general machinery equals the tensor-product construction") {
        const Vec psi0 = random_state(circuit.dim(), 31);
        const JointDistribution general = joint_distribution(psi0, instance, circuit);
        const JointDistribution reference = noninteracting_reference(psi0, instance, params);
        CHECK(total_variation(general, reference) <= 1e-8);
        CHECK(std::abs(reference.total - 1.0) <= 1e-8);
    }

    SUBCASE("product states make the particle flash families independent") {
        // One band per flash keeps the shared cut-off geometry independent of
        // the other particle's outcome; with several bands the regions couple
        // the marginals even without interaction.
        ModelInstance fixed = instance;
        fixed.params.bands = 1;
        const Circuit plain(fixed.strip, params, 2);
        const Vec psi0 = product_gaussian_state(fixed, {2, 4}, 1.0, 1);
        const JointDistribution dist = joint_distribution(psi0, fixed, plain);
        CHECK(mutual_information(dist, 0, 1) <= 1e-10);
    }

    SUBCASE("an entangled state gives correlated flashes") {
        ModelInstance tight = instance;
        tight.params.sigma = 0.8;
        const Vec psi0 = entangled_pair_state(tight, {1, 1}, {5, 5}, 1);
        const JointDistribution dist = joint_distribution(psi0, tight, circuit);
        CHECK(mutual_information(dist, 0, 1) > 0.01);
    }

    SUBCASE("requires a non-interacting circuit") {
        const Vec psi0 = random_state(circuit.dim(), 5);
        CHECK_THROWS_AS(
            noninteracting_reference(psi0, instance, dynamics(instance.strip, 0.4, 0.7)),
            std::invalid_argument);
    }
}

TEST_CASE("marginals of the longer model differ from the shorter model") {
    // With interaction, integrating out the last flash does not reproduce the
    // smaller model: the cut-off regions depend on the later flash.
    ModelInstance longer = two_particle_instance();
    longer.params.bands = 1;
    longer.params.sigma = 1.0;
    longer.params.flashes = {2, 1};
    const Circuit circuit(longer.strip, dynamics(longer.strip, 0.4, 0.7), 2);
    const Vec psi0 = product_gaussian_state(longer, {2, 4}, 1.0, 1);
    const JointDistribution joint_long = joint_distribution(psi0, longer, circuit);

    ModelInstance shorter = longer;
    shorter.params.flashes = {1, 1};
    const JointDistribution joint_short = joint_distribution(psi0, shorter, circuit);

    std::map<std::string, double> reduced;
    for (const JointEntry& e : joint_short.entries) {
        reduced[config_key(e.config)] = e.probability;
    }
    const double tv = map_total_variation(marginal_over_last_flash(joint_long, 0), reduced);
    CHECK(tv > 1e-3);
}

TEST_CASE("non-relativistic limit") {
    SUBCASE("two deep-seeded particles against the flat-slice chain") {
        ModelInstance instance;
        instance.strip = Strip{5, 10};
        instance.params.sigma = 1.2;
        instance.params.tau_hat = 10.0;
        instance.params.delta_s = 16.5;  // flat across 5 sites
        instance.params.bands = 1;
        instance.params.flashes = {1, 1};
        instance.seeds = {{-14, 2}, {-13, 2}};
        const Circuit circuit(instance.strip, dynamics(instance.strip, 0.3, 0.5), 2);
        const Vec psi0 = entangled_pair_state(instance, {1, 1}, {3, 3}, 1);
        const JointDistribution general = joint_distribution(psi0, instance, circuit);
        const JointDistribution reference = flat_limit_reference(psi0, instance, circuit);
        CHECK(total_variation(general, reference) <= 1e-8);
    }

    SUBCASE("single particle two-flash chain") {
        ModelInstance instance;
        instance.strip = Strip{5, 24};
        instance.params.sigma = 1.0;
        instance.params.tau_hat = 20.0;
        instance.params.delta_s = 16.5;
        instance.params.bands = 1;
        instance.params.flashes = {2};
        instance.seeds = {{-14, 2}};
        const Circuit circuit(instance.strip, dynamics(instance.strip, 0.3, 0.0), 1);
        const Vec psi0 = product_gaussian_state(instance, {2}, 1.0, 1);
        const JointDistribution general = joint_distribution(psi0, instance, circuit);
        const JointDistribution reference = flat_limit_reference(psi0, instance, circuit);
        CHECK(total_variation(general, reference) <= 1e-8);
    }

    SUBCASE("shallow seeds fail the flatness precondition") {
        ModelInstance instance = two_particle_instance();
        const Circuit circuit(instance.strip, dynamics(instance.strip, 0.3, 0.0), 2);
        const Vec psi0 = product_gaussian_state(instance, {2, 4}, 1.0, 1);
        CHECK_THROWS_AS(flat_limit_reference(psi0, instance, circuit), std::runtime_error);
    }
}

TEST_CASE("microscopic parameter independence") {
    ModelInstance instance = two_particle_instance();
    instance.params.bands = 1;
    const Vec psi0 = product_gaussian_state(instance, {2, 4}, 1.0, 1);
    PotentialTable base(instance.strip.sites, instance.strip.t_max);
    base.set(2, 3, 0.4);

    SUBCASE("identical fields give zero exactly") {
        const Cut surface = flat_cut(8, instance.strip);
        CHECK(parameter_independence_probe(surface, base, base, psi0, instance, 0.4, 0.7) ==
              0.0);
    }

    SUBCASE("fields differing above every 3-cell leave the marginal unchanged") {
        const Cut surface = flat_cut(8, instance.strip);
        PotentialTable changed = base;
        changed.set(9, 1, 1.3);
        changed.set(10, 5, -0.6);
        CHECK(parameter_independence_probe(surface, base, changed, psi0, instance, 0.4, 0.7) <=
              1e-10);
    }

    SUBCASE("differences across a straddling 3-cell are reported, not asserted") {
        const Cut surface = flat_cut(3, instance.strip);
        PotentialTable changed = base;
        changed.set(4, 2, 0.9);
        const double tv = parameter_independence_probe(surface, base, changed, psi0, instance,
                                                       0.4, 0.7);
        CHECK(tv >= 0.0);
        CHECK(tv < 1.0);
    }

    SUBCASE("fields touching the past are rejected") {
        const Cut surface = flat_cut(3, instance.strip);
        PotentialTable changed = base;
        changed.set(1, 1, 0.2);
        CHECK_THROWS_AS(
            parameter_independence_probe(surface, base, changed, psi0, instance, 0.4, 0.7),
            std::invalid_argument);
    }
}
