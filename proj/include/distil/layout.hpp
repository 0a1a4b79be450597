#pragma once

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace distil {

enum class Party { Alice, Bob };

inline const char* party_name(Party p) { return p == Party::Alice ? "Alice" : "Bob"; }

// One tensor factor of a multi-register space.
struct Register {
  int id = 0;
  int dim = 0;
  Party party = Party::Alice;

  friend bool operator==(const Register&, const Register&) = default;
};

// Ordered collection of registers. Matrices and vectors are stored row-major
// over this order: the first register carries the most significant index
// digit. Factories produce ascending-id order; any other order is created
// explicitly through permute_registers, never implicitly.
class RegisterLayout {
 public:
  RegisterLayout() = default;
  explicit RegisterLayout(std::vector<Register> regs) : regs_(std::move(regs)) { validate(); }
  RegisterLayout(std::initializer_list<Register> regs) : regs_(regs) { validate(); }

  // n_pairs two-register cells of local dimension d, ids first_id,
  // first_id+1, .... Odd ids belong to Alice, even ids to Bob.
  static RegisterLayout pairs(int d, int n_pairs, int first_id = 1) {
    if (d < 1 || n_pairs < 1) throw std::invalid_argument("RegisterLayout::pairs: d and n_pairs must be positive");
    std::vector<Register> regs;
    regs.reserve(2 * static_cast<std::size_t>(n_pairs));
    for (int k = 0; k < 2 * n_pairs; ++k) {
      const int id = first_id + k;
      regs.push_back(Register{id, d, (id % 2 != 0) ? Party::Alice : Party::Bob});
    }
    return RegisterLayout(std::move(regs));
  }

  static RegisterLayout single(int id, int dim, Party party) {
    return RegisterLayout({Register{id, dim, party}});
  }

  int count() const { return static_cast<int>(regs_.size()); }
  bool empty() const { return regs_.empty(); }

  long dim() const {
    long total = 1;
    for (const Register& r : regs_) {
      total *= r.dim;
      if (total > (1L << 40)) throw std::length_error("RegisterLayout::dim: total dimension overflow");
    }
    return total;
  }

  const Register& at(int position) const { return regs_.at(static_cast<std::size_t>(position)); }
  const std::vector<Register>& registers() const { return regs_; }

  int position_of(int id) const {
    for (std::size_t k = 0; k < regs_.size(); ++k)
      if (regs_[k].id == id) return static_cast<int>(k);
    return -1;
  }
  bool contains(int id) const { return position_of(id) >= 0; }

  const Register& by_id(int id) const {
    const int pos = position_of(id);
    if (pos < 0) throw std::invalid_argument("RegisterLayout: unknown register id " + std::to_string(id));
    return regs_[static_cast<std::size_t>(pos)];
  }

  std::vector<int> ids() const {
    std::vector<int> out;
    out.reserve(regs_.size());
    for (const Register& r : regs_) out.push_back(r.id);
    return out;
  }

  std::vector<int> ids_of(Party p) const {
    std::vector<int> out;
    for (const Register& r : regs_)
      if (r.party == p) out.push_back(r.id);
    std::sort(out.begin(), out.end());
    return out;
  }

  // Row-major strides per position (last register has stride 1).
  std::vector<long> strides() const {
    std::vector<long> s(regs_.size(), 1);
    for (int k = count() - 2; k >= 0; --k) s[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(k) + 1] * regs_[static_cast<std::size_t>(k) + 1].dim;
    return s;
  }

  void digits_of(long flat, std::vector<int>& out) const {
    out.resize(regs_.size());
    for (int k = count() - 1; k >= 0; --k) {
      const int d = regs_[static_cast<std::size_t>(k)].dim;
      out[static_cast<std::size_t>(k)] = static_cast<int>(flat % d);
      flat /= d;
    }
  }

  long flat_of(const std::vector<int>& digits) const {
    if (digits.size() != regs_.size()) throw std::invalid_argument("RegisterLayout::flat_of: digit count mismatch");
    long flat = 0;
    for (std::size_t k = 0; k < regs_.size(); ++k) {
      if (digits[k] < 0 || digits[k] >= regs_[k].dim) throw std::out_of_range("RegisterLayout::flat_of: digit out of range");
      flat = flat * regs_[k].dim + digits[k];
    }
    return flat;
  }

  RegisterLayout without(const std::vector<int>& drop_ids) const {
    for (int id : drop_ids) by_id(id);  // unknown id -> throw
    std::vector<Register> kept;
    for (const Register& r : regs_)
      if (std::find(drop_ids.begin(), drop_ids.end(), r.id) == drop_ids.end()) kept.push_back(r);
    return RegisterLayout(std::move(kept));
  }

  // Same registers, listed in the requested id order. Throws unless id_order
  // is a permutation of the current ids.
  RegisterLayout reordered(const std::vector<int>& id_order) const {
    if (static_cast<int>(id_order.size()) != count())
      throw std::invalid_argument("RegisterLayout::reordered: ordering is not a permutation (size mismatch)");
    std::vector<Register> regs;
    regs.reserve(id_order.size());
    std::vector<bool> used(regs_.size(), false);
    for (int id : id_order) {
      const int pos = position_of(id);
      if (pos < 0 || used[static_cast<std::size_t>(pos)])
        throw std::invalid_argument("RegisterLayout::reordered: ordering is not a permutation of the layout ids");
      used[static_cast<std::size_t>(pos)] = true;
      regs.push_back(regs_[static_cast<std::size_t>(pos)]);
    }
    return RegisterLayout(std::move(regs));
  }

  static RegisterLayout concat(const RegisterLayout& a, const RegisterLayout& b) {
    std::vector<Register> regs = a.regs_;
    regs.insert(regs.end(), b.regs_.begin(), b.regs_.end());
    return RegisterLayout(std::move(regs));  // duplicate ids rejected by validate()
  }

  friend bool operator==(const RegisterLayout&, const RegisterLayout&) = default;

 private:
  void validate() const {
    for (std::size_t i = 0; i < regs_.size(); ++i) {
      if (regs_[i].dim < 1) throw std::invalid_argument("RegisterLayout: register dimension must be positive");
      for (std::size_t j = i + 1; j < regs_.size(); ++j)
        if (regs_[i].id == regs_[j].id)
          throw std::invalid_argument("RegisterLayout: duplicate register id " + std::to_string(regs_[i].id));
    }
  }

  std::vector<Register> regs_;
};

}  // namespace distil
