#include "rbd/commands.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>
#include <unistd.h>

int main(int argc, char** argv)
{
    CLI::App app{"Exact verification of rational blow-down constructions"};
    app.require_subcommand(1);

    std::vector<std::string> files;
    std::string json_out;
    auto* verify = app.add_subcommand("verify", "run construction scripts");
    verify->add_option("files", files, "script files")->required()->check(CLI::ExistingFile);
    verify->add_option("--json", json_out, "write the JSON report here");

    std::int64_t p = 0, q = 0;
    auto* chain = app.add_subcommand("chain", "print the chain C(p,q) and its lens order");
    chain->add_option("p", p)->required();
    chain->add_option("q", q)->required();

    std::vector<std::int64_t> bs;
    auto* tclass = app.add_subcommand("tclass", "classify a chain b1 b2 ...");
    tclass->add_option("b", bs, "chain entries")->required();

    std::size_t max_len = 4;
    std::int64_t max_b = 6;
    auto* enum_t = app.add_subcommand("enum-t", "list class-T chains within bounds");
    enum_t->add_option("--max-len", max_len)->check(CLI::Range(1, 30));
    enum_t->add_option("--max-b", max_b)->check(CLI::Range(2, 1000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : rbd::kExitUsage;
    }

    try {
        if (*verify) {
            bool color = std::getenv("RBD_NO_COLOR") == nullptr && isatty(STDOUT_FILENO);
            std::optional<std::string> json;
            if (!json_out.empty())
                json = json_out;
            return rbd::verify_files(files, json, std::cout, std::cerr, color);
        }
        if (*chain) {
            std::cout << rbd::chain_line(p, q) << "\n";
        } else if (*tclass) {
            std::cout << rbd::tclass_line(bs) << "\n";
        } else if (*enum_t) {
            for (const auto& line : rbd::enum_t_lines(max_len, max_b))
                std::cout << line << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return rbd::kExitUsage;
    }
    return rbd::kExitPass;
}
