#pragma once

#include <vector>

namespace redmax {

// Finite permutation in one-line form: oneline[i-1] = w(i), values 1..n.
struct Permutation {
  std::vector<int> oneline;

  static Permutation identity(int n);
  int n() const { return static_cast<int>(oneline.size()); }
  bool is_identity() const;
  long long inversions() const;
  bool operator==(const Permutation&) const = default;
};

// Throws InvalidInputError unless oneline is a permutation of 1..n.
void validate_permutation(const Permutation& w);

// w0 = n n-1 ... 1.
Permutation longest_permutation(int n);

// A word in the generators s_1..s_{n-1}; letters[i] is a generator index.
struct Word {
  int n = 0;
  std::vector<int> letters;
  bool operator==(const Word&) const = default;
};

void validate_word(const Word& w);

// Product of the word, built by right multiplication: appending s_i swaps
// one-line positions i and i+1.
Permutation word_product(const Word& w);

// A word is reduced iff its letter count equals the inversion count of its
// product.
bool is_reduced(const Word& w);

long long count_letter(const Word& w, int k);

}  // namespace redmax
