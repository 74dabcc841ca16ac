#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tsvs/canonical.hpp"
#include "tsvs/hom.hpp"

// Textual formats. All parsers are whitespace-insensitive and report the
// byte offset of the first offending character via ParseError.
//
//   polynomial     x^3 - 2, 1/2*x^2 + x - 3/4
//   field header   numberfield g: x^3 - 2 | funcfield t | rationals
//   K element      polynomial in the field generator, e.g. 1/2*g^2 + 1
//   Q(t) element   (t^2+1)/(t-1); INT/INT binds as a rational literal
//   matrix         [[0, -g], [g, -g]] with entries in the ambient syntax
//   hom/matrix doc field header line followed by a matrix (header optional
//                  for matrix docs; bare matrices read as rational)
//   hs doc         hs over funcfield t: [D0; D1; t*D1 + 2*D2]
//   basis doc      [1, 1/2*g^2*X] with entries polynomial in X over K

namespace tsvs::io {

std::string poly_str(const RatPoly& p, const std::string& var = "x");
std::string nf_str(const NFElement& x);
std::string kpoly_str(const KPoly& p, const std::string& var = "x");
std::string ratfunc_str(const RatFunc& x);
std::string diffop_str(const DiffOperator& op);
std::string matrix_str(const Matrix<NFElement>& m);
std::string matrix_str(const Matrix<RatFunc>& m);
std::string matrix_str(const Matrix<Rational>& m);
std::string field_str(const NumberField& k);  // "rationals" when deg = 1
std::string funcfield_str();
std::string hs_str(const HigherDerivation& d);

RatPoly parse_ratpoly(const std::string& text, const std::string& var = "x");
NFElement parse_nf_element(const std::string& text, const NumberField& k);
KPoly parse_kpoly(const std::string& text, const NumberField& k, const std::string& var = "X");
RatFunc parse_ratfunc(const std::string& text);
DiffOperator parse_diffop(const std::string& text);

struct FuncFieldTag {};
using FieldDescriptor = std::variant<NumberField, FuncFieldTag>;

FieldDescriptor parse_field_header(const std::string& text);

using NFMatrixDoc = std::pair<NumberField, Matrix<NFElement>>;
using MatrixDoc = std::variant<NFMatrixDoc, Matrix<RatFunc>>;

// Field header (optional; defaults to the rationals) followed by a matrix.
MatrixDoc parse_matrix_doc(const std::string& text);

std::string matrix_doc_str(const NumberField& k, const Matrix<NFElement>& m);
std::string matrix_doc_str(const Matrix<RatFunc>& m);

// The first entry must be literally D0; validity of the sequence is the
// concern of the operations, not the parser.
HigherDerivation parse_hs_doc(const std::string& text);

std::vector<KPoly> parse_basis_doc(const std::string& text, const NumberField& k);

std::string read_file(const std::string& path);  // throws Error("FileNotFound")

}  // namespace tsvs::io
