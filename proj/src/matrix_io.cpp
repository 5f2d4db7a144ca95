#include "uinorm/matrix_io.hpp"

#include "uinorm/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace uinorm {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

json parse_json(std::string_view text)
{
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
}

std::size_t dimension_field(const json& j, const char* name)
{
    const auto it = j.find(name);
    if (it == j.end() || !it->is_number_integer() || it->get<long long>() < 1) {
        throw Error(ErrorKind::ParseError, std::string("field '") + name + "' must be a positive integer");
    }
    return static_cast<std::size_t>(it->get<long long>());
}

double finite_number(const json& v)
{
    if (!v.is_number()) {
        throw Error(ErrorKind::ParseError, "matrix entries must be numbers");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        throw Error(ErrorKind::ParseError, "matrix entries must be finite");
    }
    return x;
}

ComplexMatrix matrix_from(const json& j)
{
    if (!j.is_object()) {
        throw Error(ErrorKind::ParseError, "matrix must be a JSON object");
    }
    const std::size_t rows = dimension_field(j, "rows");
    const std::size_t cols = dimension_field(j, "cols");
    const auto data = j.find("data");
    if (data == j.end() || !data->is_array()) {
        throw Error(ErrorKind::ParseError, "field 'data' must be an array");
    }
    if (data->size() != rows * cols) {
        throw Error(ErrorKind::ParseError, "data holds " + std::to_string(data->size()) + " entries, expected " +
                                               std::to_string(rows * cols));
    }
    ComplexMatrix q(rows, cols);
    auto entries = q.entries();
    for (std::size_t i = 0; i < data->size(); ++i) {
        const auto& pair = (*data)[i];
        if (!pair.is_array() || pair.size() != 2) {
            throw Error(ErrorKind::ParseError, "each entry must be a [re, im] pair");
        }
        entries[i] = {finite_number(pair[0]), finite_number(pair[1])};
    }
    return q;
}

ordered_json matrix_to(const ComplexMatrix& q)
{
    ordered_json data = ordered_json::array();
    for (const auto& z : q.entries()) {
        data.push_back({z.real(), z.imag()});
    }
    return {{"rows", q.rows()}, {"cols", q.cols()}, {"data", std::move(data)}};
}

std::string slurp(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::ParseError, "cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

ComplexMatrix parse_matrix(std::string_view text)
{
    return matrix_from(parse_json(text));
}

std::vector<ComplexMatrix> parse_kraus(std::string_view text)
{
    const auto j = parse_json(text);
    const auto list = j.is_object() ? j.find("kraus") : j.end();
    if (list == j.end() || !list->is_array() || list->empty()) {
        throw Error(ErrorKind::ParseError, "Kraus file needs a nonempty 'kraus' array");
    }
    std::vector<ComplexMatrix> out;
    for (const auto& item : *list) {
        out.push_back(matrix_from(item));
    }
    return out;
}

std::string format_matrix(const ComplexMatrix& q)
{
    return matrix_to(q).dump() + "\n";
}

std::string format_kraus(const std::vector<ComplexMatrix>& kraus)
{
    ordered_json list = ordered_json::array();
    for (const auto& k : kraus) {
        list.push_back(matrix_to(k));
    }
    return ordered_json{{"kraus", std::move(list)}}.dump() + "\n";
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path)
{
    return parse_matrix(slurp(path));
}

std::vector<ComplexMatrix> read_kraus_file(const std::filesystem::path& path)
{
    return parse_kraus(slurp(path));
}

void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& q)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::ParseError, "cannot write " + path.string());
    }
    out << format_matrix(q);
}

} // namespace uinorm
