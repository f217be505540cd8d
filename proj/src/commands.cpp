#include "rbd/commands.hpp"

#include "rbd/chains.hpp"
#include "rbd/report.hpp"
#include "rbd/runner.hpp"
#include "rbd/script.hpp"
#include "rbd/topology.hpp"

#include <fstream>
#include <ostream>

namespace rbd {

std::string chain_line(std::int64_t p, std::int64_t q)
{
    auto c = cpq_chain(CpqParams::make(p, q));
    return c.str() + "  lens order " + std::to_string(lens_order(c));
}

std::string tclass_line(const std::vector<std::int64_t>& bs)
{
    Chain c(bs);
    if (is_rdp_chain(c))
        return "not class T (rational double point)";
    if (!is_class_T(c))
        return "not class T";
    std::string out = "class T;";
    for (const auto& t : t_params(c))
        out += " (d,n,a)=(" + std::to_string(t.d) + "," + std::to_string(t.n) + "," + std::to_string(t.a) + ");";
    if (auto m = recognize_cpq(c))
        out += " C(" + std::to_string(m->params.p) + "," + std::to_string(m->params.q) + ")";
    else
        out.pop_back();
    return out;
}

std::vector<std::string> enum_t_lines(std::size_t max_len, std::int64_t max_b)
{
    const Chain three_three({3, 3});
    std::vector<std::string> out;
    for (const auto& c : enumerate_T(max_len, max_b))
        out.push_back(c.str() + (class_T_base(c) == three_three ? " *" : ""));
    return out;
}

int verify_files(const std::vector<std::string>& paths, const std::optional<std::string>& json_path,
                 std::ostream& out, std::ostream& err, bool color)
{
    int code = kExitPass;
    auto reports = nlohmann::ordered_json::array();
    for (const auto& path : paths) {
        try {
            auto script = load_script(path);
            auto report = run(script);
            out << render_text(report, color);
            reports.push_back(to_json(report));
            if (!report.passed())
                code = std::max<int>(code, kExitCheckFailed);
        } catch (const ParseError& e) {
            err << path << ":" << e.pos().line << ":" << e.pos().column << ": parse error: " << e.detail() << "\n";
            code = kExitUsage;
        } catch (const RunError& e) {
            err << path << ":" << e.what() << "\n";
            code = std::max<int>(code, kExitCheckFailed);
        } catch (const std::exception& e) {
            err << path << ": " << e.what() << "\n";
            code = kExitUsage;
        }
    }
    if (json_path) {
        std::ofstream f(*json_path, std::ios::binary);
        if (!f) {
            err << "cannot write " << *json_path << "\n";
            return kExitUsage;
        }
        f << (reports.size() == 1 ? reports[0] : reports).dump(2) << "\n";
    }
    return code;
}

} // namespace rbd
