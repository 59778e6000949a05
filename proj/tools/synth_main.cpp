#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sentilens/synthetic.hpp"
#include "sentilens/util.hpp"

int main(int argc, char** argv) {
    using namespace sentilens;

    CLI::App app{"deterministic stand-in review corpus generator"};
    std::string out;
    SyntheticParams params;
    app.add_option("-o,--out", out, "output JSON-lines path")->required();
    app.add_option("-r,--records", params.records, "number of records");
    app.add_option("-s,--seed", params.seed, "generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        write_synthetic_dataset(out, params);
        std::cout << out << ": " << params.records << " records (seed " << params.seed << ")\n";
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
