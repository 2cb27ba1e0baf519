#pragma once

#include "nilcalc/hellip.hpp"
#include "nilcalc/liealg.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nilcalc {

using Json = nlohmann::ordered_json;

// complex rational coefficient of a gamma entry
struct CoeffQ
{
	Q re, im;
};

struct OperatorBlock
{
	std::optional<QMatrix> metric; // identity on g_{-1} when absent
	std::size_t rank = 1;
	// gamma[a][b] is a linear form in the center coordinates
	std::vector<std::vector<std::vector<CoeffQ>>> gamma;
};

struct AlgebraDocument
{
	std::string name;
	std::vector<int> weights;
	std::vector<std::string> basis;
	std::vector<BracketEntry> brackets; // zero-based, i < j
	std::optional<std::vector<std::size_t>> flag; // zero-based
	std::optional<OperatorBlock> op;

	std::size_t dimension() const { return weights.size(); }
};

enum class DocumentFormat { json, toml };

DocumentFormat format_for_path(const std::string &path);
AlgebraDocument parse_document(const std::string &text, DocumentFormat format,
                               const std::string &origin = "<input>");
AlgebraDocument load_document(const std::string &path);

// structure checks only; the bracket table is not validated
AlgebraDocument document_from_json(const Json &j);
Json document_to_json(const AlgebraDocument &doc);
// sorted brackets, reduced coefficients, compact dump
std::string canonical_text(const AlgebraDocument &doc);
std::string fingerprint(const AlgebraDocument &doc);
std::string sha256_hex(const std::string &bytes);

GradedLieAlgebra to_algebra(const AlgebraDocument &doc);
// throws malformed_input citing the first violated axiom
GradedLieAlgebra parse_algebra(const std::string &text, DocumentFormat format);
AlgebraDocument document_from_algebra(const GradedLieAlgebra &g);

BvEOperatorSpec operator_spec(const AlgebraDocument &doc);
Eigen::MatrixXcd gamma_matrix(const OperatorBlock &op, const QVec &xi);

std::vector<std::string> family_names();
// family parameters: an integer, a comma list for heisenberg-product, a file for mohsen-of
AlgebraDocument corpus_generate(const std::string &family, const std::string &param);

} // namespace nilcalc
