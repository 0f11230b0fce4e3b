#include "definetti/exchangeable.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "definetti/numeric.hpp"

namespace definetti {

namespace {

void check_distribution(const std::vector<double>& p, double tol, const char* what) {
    CompensatedSum s;
    for (double x : p) {
        if (!(x >= 0.0) || std::isinf(x))
            throw std::invalid_argument(std::string(what) + ": negative or non-finite probability");
        s += x;
    }
    if (std::abs(s.value() - 1.0) > tol)
        throw std::invalid_argument(std::string(what) + ": probabilities sum to " +
                                    std::to_string(s.value()));
}

}  // namespace

LetterDist::LetterDist(std::vector<double> p, double tol) : p_(std::move(p)) {
    if (p_.empty()) throw std::invalid_argument("LetterDist: empty alphabet");
    check_distribution(p_, tol, "LetterDist");
}

std::size_t dense_size(int alphabet_size, int length) {
    if (alphabet_size < 1 || length < 0) throw std::invalid_argument("dense_size: bad dimensions");
    constexpr std::size_t kMaxDense = std::size_t{1} << 28;
    std::size_t n = 1;
    for (int i = 0; i < length; ++i) {
        n *= static_cast<std::size_t>(alphabet_size);
        if (n > kMaxDense) throw std::range_error("dense joint too large");
    }
    return n;
}

GenericJoint::GenericJoint(int alphabet_size, int length, std::vector<double> prob, double tol)
    : m_(alphabet_size), length_(length), prob_(std::move(prob)) {
    if (prob_.size() != dense_size(m_, length_))
        throw std::invalid_argument("GenericJoint: expected m^L probabilities");
    check_distribution(prob_, tol, "GenericJoint");
}

double GenericJoint::at(std::span<const int> sequence) const {
    if (static_cast<int>(sequence.size()) != length_) throw std::invalid_argument("sequence length mismatch");
    std::size_t idx = 0;
    for (int s : sequence) idx = idx * static_cast<std::size_t>(m_) + static_cast<std::size_t>(s);
    return prob_[idx];
}

std::vector<int> GenericJoint::sequence(std::size_t index) const {
    std::vector<int> seq(static_cast<std::size_t>(length_));
    for (int t = length_ - 1; t >= 0; --t) {
        seq[static_cast<std::size_t>(t)] = static_cast<int>(index % static_cast<std::size_t>(m_));
        index /= static_cast<std::size_t>(m_);
    }
    return seq;
}

ExchangeableLaw::ExchangeableLaw(int alphabet_size, int n, std::vector<double> seq_prob, double tol)
    : space_(alphabet_size, n), q_(std::move(seq_prob)) {
    if (q_.size() != space_.size())
        throw std::invalid_argument("ExchangeableLaw: expected one probability per type class");
    CompensatedSum total;
    for (std::size_t i = 0; i < q_.size(); ++i) {
        if (!(q_[i] >= 0.0) || std::isinf(q_[i]))
            throw std::invalid_argument("ExchangeableLaw: negative or non-finite probability");
        total += space_.mult(i) * q_[i];
    }
    if (std::abs(total.value() - 1.0) > tol)
        throw std::invalid_argument("ExchangeableLaw: type-class masses sum to " +
                                    std::to_string(total.value()));
}

BlockJoint::BlockJoint(int alphabet_size, int a, int b, std::vector<double> joint)
    : first_(alphabet_size, a), second_(alphabet_size, b), joint_(std::move(joint)) {
    if (joint_.size() != first_.size() * second_.size())
        throw std::invalid_argument("BlockJoint: size mismatch");
}

std::vector<double> BlockJoint::first_marginal() const {
    std::vector<double> out(first_.size());
    for (std::size_t i = 0; i < first_.size(); ++i) {
        CompensatedSum s;
        for (std::size_t j = 0; j < second_.size(); ++j) s += second_.mult(j) * (*this)(i, j);
        out[i] = s.value();
    }
    return out;
}

std::vector<double> BlockJoint::second_marginal() const {
    std::vector<double> out(second_.size());
    for (std::size_t j = 0; j < second_.size(); ++j) {
        CompensatedSum s;
        for (std::size_t i = 0; i < first_.size(); ++i) s += first_.mult(i) * (*this)(i, j);
        out[j] = s.value();
    }
    return out;
}

BlockJoint BlockJoint::transpose() const {
    std::vector<double> t(joint_.size());
    for (std::size_t i = 0; i < first_.size(); ++i)
        for (std::size_t j = 0; j < second_.size(); ++j) t[j * first_.size() + i] = (*this)(i, j);
    return BlockJoint(alphabet_size(), b(), a(), std::move(t));
}

GenericJoint densify(const ExchangeableLaw& law) {
    const int m = law.alphabet_size();
    const std::size_t size = dense_size(m, law.n());
    std::vector<double> prob(size);
    std::vector<int> counts(static_cast<std::size_t>(m));
    for (std::size_t idx = 0; idx < size; ++idx) {
        std::fill(counts.begin(), counts.end(), 0);
        std::size_t rest = idx;
        for (int t = 0; t < law.n(); ++t) {
            ++counts[rest % static_cast<std::size_t>(m)];
            rest /= static_cast<std::size_t>(m);
        }
        prob[idx] = law.seq_prob(law.space().index_of(counts));
    }
    return GenericJoint(m, law.n(), std::move(prob), std::numeric_limits<double>::infinity());
}

namespace {

// Type index of every dense sequence.
std::vector<std::size_t> dense_type_indices(const TypeSpace& space) {
    const int m = space.alphabet_size();
    const std::size_t size = dense_size(m, space.length());
    std::vector<std::size_t> out(size);
    std::vector<int> counts(static_cast<std::size_t>(m));
    for (std::size_t idx = 0; idx < size; ++idx) {
        std::fill(counts.begin(), counts.end(), 0);
        std::size_t rest = idx;
        for (int t = 0; t < space.length(); ++t) {
            ++counts[rest % static_cast<std::size_t>(m)];
            rest /= static_cast<std::size_t>(m);
        }
        out[idx] = space.index_of(counts);
    }
    return out;
}

std::vector<double> orbit_averages(const GenericJoint& joint, const TypeSpace& space,
                                   const std::vector<std::size_t>& type_idx) {
    std::vector<CompensatedSum> mass(space.size());
    for (std::size_t idx = 0; idx < joint.size(); ++idx) mass[type_idx[idx]] += joint[idx];
    std::vector<double> q(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) q[i] = mass[i].value() / space.mult(i);
    return q;
}

}  // namespace

ExchangeableLaw symmetrize(const GenericJoint& joint) {
    TypeSpace space(joint.alphabet_size(), joint.length());
    auto q = orbit_averages(joint, space, dense_type_indices(space));
    return ExchangeableLaw(joint.alphabet_size(), joint.length(), std::move(q));
}

bool is_exchangeable(const GenericJoint& joint, double tol) {
    TypeSpace space(joint.alphabet_size(), joint.length());
    const auto type_idx = dense_type_indices(space);
    const auto q = orbit_averages(joint, space, type_idx);
    for (std::size_t idx = 0; idx < joint.size(); ++idx)
        if (std::abs(joint[idx] - q[type_idx[idx]]) > tol) return false;
    return true;
}

ExchangeableLaw marginal(const ExchangeableLaw& law, int k) {
    if (k < 0 || k > law.n()) throw std::invalid_argument("marginal: need 0 <= k <= n");
    if (k == law.n()) return law;
    const int m = law.alphabet_size();
    const TypeSpace head(m, k);
    const TypeSpace tail(m, law.n() - k);
    std::vector<double> q(head.size());
    CompensatedSum total;
    for (std::size_t s = 0; s < head.size(); ++s) {
        CompensatedSum acc;
        for (std::size_t r = 0; r < tail.size(); ++r)
            acc += tail.mult(r) * law.seq_prob(head[s] + tail[r]);
        q[s] = acc.value();
        total += head.mult(s) * q[s];
    }
    // Renormalize away accumulated rounding.
    const double z = total.value();
    for (double& v : q) v /= z;
    return ExchangeableLaw(m, k, std::move(q));
}

BlockJoint block_joint(const ExchangeableLaw& law, int a, int b) {
    if (a < 0 || b < 0 || a + b > law.n()) throw std::invalid_argument("block_joint: need a + b <= n");
    const ExchangeableLaw joint_law = marginal(law, a + b);
    const int m = law.alphabet_size();
    const TypeSpace first(m, a);
    const TypeSpace second(m, b);
    std::vector<double> joint(first.size() * second.size());
    for (std::size_t i = 0; i < first.size(); ++i)
        for (std::size_t j = 0; j < second.size(); ++j)
            joint[i * second.size() + j] = joint_law.seq_prob(first[i] + second[j]);
    return BlockJoint(m, a, b, std::move(joint));
}

double block_type_probability(const ExchangeableLaw& law, const TypeVector& w) {
    const int b = w.length();
    if (b > law.n()) throw std::invalid_argument("block longer than law");
    const ExchangeableLaw mb = marginal(law, b);
    return static_cast<double>(multiplicity(w)) * mb.seq_prob(w);
}

ExchangeableLaw conditional_law(const ExchangeableLaw& law, int k, const TypeVector& w) {
    const int b = w.length();
    if (k < 0 || k + b > law.n()) throw std::invalid_argument("conditional_law: need k + b <= n");
    const int m = law.alphabet_size();
    const ExchangeableLaw mb = marginal(law, b);
    const double denom = mb.seq_prob(w);
    if (!(denom > 0.0)) throw UndefinedConditional("conditioning on a zero-probability type");
    const ExchangeableLaw mkb = marginal(law, k + b);
    const TypeSpace head(m, k);
    std::vector<double> q(head.size());
    CompensatedSum total;
    for (std::size_t s = 0; s < head.size(); ++s) {
        q[s] = mkb.seq_prob(head[s] + w) / denom;
        total += head.mult(s) * q[s];
    }
    const double z = total.value();
    for (double& v : q) v /= z;
    return ExchangeableLaw(m, k, std::move(q));
}

LetterDist conditional_component(const ExchangeableLaw& law, const TypeVector& w) {
    const ExchangeableLaw c = conditional_law(law, 1, w);
    // For length-1 laws the type index of e_a is m-1-a in lexicographic order;
    // go through index_of to stay independent of that detail.
    const int m = law.alphabet_size();
    std::vector<double> p(static_cast<std::size_t>(m));
    for (int a = 0; a < m; ++a) p[static_cast<std::size_t>(a)] = c.seq_prob(TypeVector::unit(m, a));
    return LetterDist(std::move(p));
}

GenericJoint conditional_block(const ExchangeableLaw& law, int k, const TypeVector& w) {
    return densify(conditional_law(law, k, w));
}

}  // namespace definetti
