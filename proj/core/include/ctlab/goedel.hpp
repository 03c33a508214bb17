#pragma once

// Arithmetization. Every node is pair(tag, payload) under Cantor pairing:
//
//   0            pair(0, 0)         t = s          pair(5, pair(s, t))
//   S(t)         pair(1, t)         !f             pair(6, f)
//   (s + t)      pair(2, pair(s,t)) (f | g)        pair(7, pair(f, g))
//   (s * t)      pair(3, pair(s,t)) E vk. f        pair(8, pair(k, f))
//   vk           pair(4, k)
//
// A sequence [x1..xn] is pair(n, T) where T pairs the items as a balanced
// tree: T = x1 for n = 1, otherwise pair(T(left half), T(right half)) with
// the left half rounded up. [a, b] is pair(2, pair(a, b)); the empty
// sequence is pair(0, 0) = 0. Indices are 0-based.

#include <cstdint>
#include <utility>
#include <vector>

#include "ctlab/natural.hpp"
#include "ctlab/syntax.hpp"

namespace ctlab {

using GoedelCode = Natural;

// decode_seq refuses longer sequences (they are legal codes, just not
// materializable).
inline constexpr std::uint64_t kMaxSeqDecode = std::uint64_t{1} << 20;

Natural pair(const Natural& x, const Natural& y);
std::pair<Natural, Natural> unpair(const Natural& z);

GoedelCode encode_term(const Term& t);
Term decode_term(const GoedelCode& c);  // NotATermCode
GoedelCode encode_formula(const Formula& f);
Formula decode_formula(const GoedelCode& c);  // NotAFormulaCode

GoedelCode encode_seq(const std::vector<GoedelCode>& xs);
std::vector<GoedelCode> decode_seq(const GoedelCode& c);  // NotASeqCode
Natural seq_len(const GoedelCode& c);                      // NotASeqCode
GoedelCode seq_get(const GoedelCode& c, const Natural& i);  // NotASeqCode, IndexOutOfRange

bool is_seq(const GoedelCode& c);
bool is_var(const GoedelCode& c);
bool is_term(const GoedelCode& c);
bool is_closed_term(const GoedelCode& c);
bool is_form(const GoedelCode& c);
bool is_form_le1(const GoedelCode& c);
bool is_sent(const GoedelCode& c);
bool is_termseq(const GoedelCode& c);
bool is_cltermseq(const GoedelCode& c);

}  // namespace ctlab
