#include "tag_gen.hpp"

#include <array>
#include <cctype>
#include <string_view>

namespace catalogue::testing {
namespace {

constexpr std::string_view kAlpha = "abcdefghijklmnopqrstuvwxyz";
constexpr std::string_view kDigit = "0123456789";
constexpr std::string_view kAlnum = "abcdefghijklmnopqrstuvwxyz0123456789";

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

std::string draw(std::mt19937_64& rng, std::string_view alphabet, int n) {
  std::string s;
  for (int i = 0; i < n; ++i) {
    char c = alphabet[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(alphabet.size()) - 1))];
    if (coin(rng, 0.3)) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    s += c;
  }
  return s;
}

std::string singleton(std::mt19937_64& rng) {
  while (true) {
    std::string s = draw(rng, kAlnum, 1);
    if (s != "x" && s != "X") return s;
  }
}

std::string privateuse(std::mt19937_64& rng) {
  std::string s = coin(rng) ? "x" : "X";
  const int n = uniform(rng, 1, 3);
  for (int i = 0; i < n; ++i) s += "-" + draw(rng, kAlnum, uniform(rng, 1, 8));
  return s;
}

constexpr std::array<std::string_view, 6> kGrandfatheredSample = {
    "i-klingon", "EN-gb-OED", "zh-min-nan", "art-lojban", "SGN-be-fr", "i-default"};

}  // namespace

std::string random_well_formed_tag(std::mt19937_64& rng) {
  const int shape = uniform(rng, 0, 19);
  if (shape == 0) return privateuse(rng);
  if (shape == 1) return std::string(kGrandfatheredSample[static_cast<std::size_t>(uniform(rng, 0, 5))]);

  std::string tag;
  const int lang_kind = uniform(rng, 0, 9);
  if (lang_kind < 7) {
    tag = draw(rng, kAlpha, uniform(rng, 2, 3));
    if (coin(rng, 0.15)) {
      const int n = uniform(rng, 1, 3);
      for (int i = 0; i < n; ++i) tag += "-" + draw(rng, kAlpha, 3);
    }
  } else if (lang_kind < 8) {
    tag = draw(rng, kAlpha, 4);
  } else {
    tag = draw(rng, kAlpha, uniform(rng, 5, 8));
  }
  if (coin(rng, 0.35)) tag += "-" + draw(rng, kAlpha, 4);
  if (coin(rng, 0.5)) tag += "-" + (coin(rng, 0.8) ? draw(rng, kAlpha, 2) : draw(rng, kDigit, 3));
  const int variants = coin(rng, 0.2) ? uniform(rng, 1, 2) : 0;
  for (int i = 0; i < variants; ++i) {
    tag += "-" + (coin(rng) ? draw(rng, kAlnum, uniform(rng, 5, 8))
                            : draw(rng, kDigit, 1) + draw(rng, kAlnum, 3));
  }
  const int extensions = coin(rng, 0.15) ? uniform(rng, 1, 2) : 0;
  for (int i = 0; i < extensions; ++i) {
    tag += "-" + singleton(rng);
    const int n = uniform(rng, 1, 2);
    for (int k = 0; k < n; ++k) tag += "-" + draw(rng, kAlnum, uniform(rng, 2, 8));
  }
  if (coin(rng, 0.15)) tag += "-" + privateuse(rng);
  return tag;
}

std::string random_corrupted_tag(std::mt19937_64& rng) {
  std::string tag = random_well_formed_tag(rng);
  switch (uniform(rng, 0, 9)) {
    case 0:  // primary subtag too short or too long
      return draw(rng, kAlpha, coin(rng) ? 1 : 9) + tag.substr(std::min(tag.find('-'), tag.size()));
    case 1:  // empty subtag
      return tag + (coin(rng) ? "-" : "--en");
    case 2:  // leading dash
      return "-" + tag;
    case 3:  // illegal character
      tag.insert(static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(tag.size()))),
                 1, "_ @.é"[uniform(rng, 0, 4)]);
      return tag;
    case 4:  // over-long subtag
      return tag + "-" + draw(rng, kAlnum, uniform(rng, 9, 12));
    case 5:  // dangling singleton
      return tag + "-" + singleton(rng);
    case 6:  // dangling private-use marker
      return tag + "-x";
    case 7:  // digit-led primary subtag
      return draw(rng, kDigit, uniform(rng, 1, 3)) + "-" + tag;
    case 8:  // four extlangs
      return draw(rng, kAlpha, 2) + "-abc-def-ghi-jkl";
    default:  // three-letter subtag after a region
      return draw(rng, kAlpha, 2) + "-" + draw(rng, kAlpha, 2) + "-" + draw(rng, kAlpha, 3);
  }
}

}  // namespace catalogue::testing
