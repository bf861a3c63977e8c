#include "redmax/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "redmax/errors.hpp"

namespace redmax {

Permutation Permutation::identity(int n) {
  Permutation w;
  w.oneline.resize(n);
  std::iota(w.oneline.begin(), w.oneline.end(), 1);
  return w;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < n(); ++i)
    if (oneline[i] != i + 1) return false;
  return true;
}

long long Permutation::inversions() const {
  long long inv = 0;
  for (int i = 0; i < n(); ++i)
    for (int j = i + 1; j < n(); ++j)
      if (oneline[i] > oneline[j]) ++inv;
  return inv;
}

void validate_permutation(const Permutation& w) {
  int n = w.n();
  if (n < 1) throw InvalidInputError("permutation must have length >= 1");
  std::vector<bool> seen(n + 1, false);
  for (int v : w.oneline) {
    if (v < 1 || v > n || seen[v])
      throw InvalidInputError("one-line form is not a permutation of 1.." + std::to_string(n));
    seen[v] = true;
  }
}

Permutation longest_permutation(int n) {
  Permutation w;
  w.oneline.resize(n);
  for (int i = 0; i < n; ++i) w.oneline[i] = n - i;
  return w;
}

void validate_word(const Word& w) {
  if (w.n < 1) throw InvalidInputError("word needs ambient size n >= 1");
  for (int i : w.letters)
    if (i < 1 || i > w.n - 1)
      throw InvalidInputError("letter s_" + std::to_string(i) + " out of range for n = " +
                              std::to_string(w.n));
}

Permutation word_product(const Word& w) {
  validate_word(w);
  Permutation p = Permutation::identity(w.n);
  for (int i : w.letters) std::swap(p.oneline[i - 1], p.oneline[i]);
  return p;
}

bool is_reduced(const Word& w) {
  return word_product(w).inversions() == static_cast<long long>(w.letters.size());
}

long long count_letter(const Word& w, int k) {
  return std::count(w.letters.begin(), w.letters.end(), k);
}

}  // namespace redmax
