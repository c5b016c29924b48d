#include "distill/sampler.hpp"

#include <stdexcept>

namespace distill {

std::string family_name(Family f) {
    switch (f) {
        case Family::general: return "general";
        case Family::normal_a: return "normal_a";
        case Family::normal_both: return "normal_both";
        case Family::b_in_P: return "b_in_P";
        case Family::theorem2_forms: return "theorem2_forms";
    }
    return "unknown";
}

Family family_from_name(const std::string& name) {
    if (name == "general") return Family::general;
    if (name == "normal_a") return Family::normal_a;
    if (name == "normal_both") return Family::normal_both;
    if (name == "b_in_P") return Family::b_in_P;
    if (name == "theorem2_forms") return Family::theorem2_forms;
    throw std::invalid_argument("unknown family: " + name);
}

namespace {

// Traceless real diagonal with Gaussian entries.
Mat traceless_diag(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    RVec v(d);
    for (int i = 0; i < d; ++i) v(i) = g(rng);
    v.array() -= v.mean();
    return v.cast<Complex>().asDiagonal();
}

Mat conjugated_diag(int d, std::mt19937_64& rng) {
    Mat D = traceless_diag(d, rng);
    Mat U = random_unitary(d, rng);
    return U * D * U.adjoint();
}

// Direct sum of random complex blocks of dimension <= 2, trace removed.
Mat block_matrix(int d, std::mt19937_64& rng) {
    std::vector<Mat> blocks;
    int left = d;
    while (left > 0) {
        int bd = (left == 1) ? 1 : 2;
        blocks.push_back(random_complex(bd, bd, rng));
        left -= bd;
    }
    Mat B = direct_sum(blocks);
    B -= (B.trace() / double(d)) * Mat::Identity(d, d);
    return B;
}

Mat theorem2_shape1(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Mat M = Mat::Zero(4, 4);
    M(0, 1) = g(rng);
    M(1, 0) = g(rng);
    M(2, 3) = g(rng);
    M(3, 2) = g(rng);
    return M;
}

Mat theorem2_shape2(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    double b1 = g(rng), b2 = g(rng);
    Mat M = Mat::Zero(4, 4);
    M(0, 3) = b2 * std::polar(1.0, ang(rng));
    M(1, 0) = b1;
    M(2, 1) = b2;
    M(3, 2) = b1;
    return M;
}

struct RawPair {
    Mat A, B;
    // b_in_P provenance: B == rotation * b_blocks * rotation^H.
    Mat b_blocks, rotation;
    bool has_provenance = false;
};

RawPair raw_sample(Family tag, int d, std::mt19937_64& rng) {
    switch (tag) {
        case Family::general:
            return {random_complex(d, d, rng), random_complex(d, d, rng)};
        case Family::normal_a:
            return {conjugated_diag(d, rng), random_complex(d, d, rng)};
        case Family::normal_both:
            return {conjugated_diag(d, rng), conjugated_diag(d, rng)};
        case Family::b_in_P: {
            Mat A = traceless_diag(d, rng);
            Mat B = block_matrix(d, rng);
            Mat V = random_unitary(d, rng);
            RawPair out{A, V * B * V.adjoint()};
            out.b_blocks = B;
            out.rotation = V;
            out.has_provenance = true;
            return out;
        }
        case Family::theorem2_forms: {
            if (d != 4)
                throw std::invalid_argument("theorem2_forms: only defined at d = 4");
            std::uniform_int_distribution<int> coin(0, 1);
            Mat A, B;
            if (coin(rng) == 0) {
                // Each matrix independently normal or similar to shape 1.
                auto pick = [&](std::mt19937_64& r) {
                    if (coin(r) == 0) return conjugated_diag(4, r);
                    Mat W = random_unitary(4, r);
                    return Mat(W * theorem2_shape1(r) * W.adjoint());
                };
                A = pick(rng);
                B = pick(rng);
            } else {
                // One normal, the other similar to shape 2.
                A = conjugated_diag(4, rng);
                Mat W = random_unitary(4, rng);
                B = W * theorem2_shape2(rng) * W.adjoint();
                if (coin(rng) == 1) std::swap(A, B);
            }
            return {A, B};
        }
    }
    throw std::logic_error("raw_sample: unreachable");
}

}  // namespace

FeasiblePoint sample(const SamplerFamily& family, std::uint64_t index) {
    auto rng = make_stream(family.rng_seed, index);
    RawPair raw = raw_sample(family.tag, family.d, rng);
    return project_to_feasible(raw.A, raw.B);
}

bool family_predicate_holds(const SamplerFamily& family, std::uint64_t index,
                            const FeasiblePoint& p) {
    double inv = std::abs(p.A.trace()) + std::abs(p.B.trace()) +
                 std::abs(p.norm_sq() - 1.0 / p.d);
    if (inv > 1e-11) return false;
    switch (family.tag) {
        case Family::general:
            return true;
        case Family::normal_a:
            return is_normal(p.A);
        case Family::normal_both:
            return is_normal(p.A) && is_normal(p.B);
        case Family::b_in_P: {
            // Replay the stream and check that p.B is the rotated image of
            // an explicit <=2-dim block direct sum.
            auto rng = make_stream(family.rng_seed, index);
            RawPair raw = raw_sample(family.tag, family.d, rng);
            if (!raw.has_provenance) return false;
            Mat unrotated = raw.rotation.adjoint() * p.B * raw.rotation;
            double s = unrotated.norm() / raw.b_blocks.norm();
            return (unrotated - s * raw.b_blocks).norm() <= 1e-10 * unrotated.norm();
        }
        case Family::theorem2_forms:
            return p.d == 4;
    }
    return false;
}

}  // namespace distill
