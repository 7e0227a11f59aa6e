#ifndef SUBSHIFT_TEST_UTIL_HPP
#define SUBSHIFT_TEST_UTIL_HPP

#include <random>
#include <string>

#include "subshift/words.hpp"

namespace subshift::testutil {

inline std::string data_path(const std::string& name) {
  return std::string(SUBSHIFT_SAMPLES_DIR) + "/" + name;
}

inline Substitution load(const std::string& name) { return load_substitution(data_path(name)); }

inline Word w(const Substitution& tau, const std::string& text) {
  return tau.alphabet.parse_word(text);
}

inline std::string fmt(const Substitution& tau, WordView word) { return tau.alphabet.format(word); }

// Random substitution on 2..max_letters letters with image lengths
// 1..max_len and at least one growing image.
inline Substitution random_substitution(std::mt19937_64& rng, int max_letters = 5,
                                        int max_len = 6) {
  std::uniform_int_distribution<int> nd(2, max_letters);
  int n = nd(rng);
  std::vector<std::string> glyphs;
  for (int i = 0; i < n; ++i) glyphs.push_back(std::string(1, static_cast<char>('a' + i)));
  Substitution tau;
  tau.alphabet = Alphabet(glyphs);
  std::uniform_int_distribution<int> len(1, max_len);
  std::uniform_int_distribution<int> letter(0, n - 1);
  bool growing = false;
  for (int a = 0; a < n; ++a) {
    int l = len(rng);
    Word img;
    for (int i = 0; i < l; ++i) img.push_back(static_cast<Letter>(letter(rng)));
    growing = growing || l > 1;
    tau.images.push_back(std::move(img));
  }
  if (!growing) tau.images[0].push_back(static_cast<Letter>(letter(rng)));
  return tau;
}

// Random substitution carrying a growing fixed point at letter 'a'.
inline Substitution random_seeded_substitution(std::mt19937_64& rng, int max_letters = 5,
                                               int max_len = 6) {
  Substitution tau = random_substitution(rng, max_letters, max_len);
  tau.images[0][0] = Letter(0);
  if (tau.images[0].size() < 2) tau.images[0].push_back(Letter(0));
  return tau;
}

inline Word random_word(std::mt19937_64& rng, const Substitution& tau, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> letter(0, static_cast<int>(tau.letters()) - 1);
  Word out;
  int l = len(rng);
  for (int i = 0; i < l; ++i) out.push_back(static_cast<Letter>(letter(rng)));
  return out;
}

}  // namespace subshift::testutil

#endif
