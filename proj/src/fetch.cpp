#include "mssa/data.hpp"
#include "mssa/error.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <fstream>

namespace mssa {

void fetch_fred_series(const std::string& series_id, const std::string& path) {
    httplib::Client client("https://fred.stlouisfed.org");
    client.set_follow_location(true);
    client.set_connection_timeout(20);
    client.set_read_timeout(60);
    const auto res = client.Get("/graph/fredgraph.csv?id=" + series_id);
    if (!res) {
        throw DataError("download of " + series_id + " failed: " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
        throw DataError("download of " + series_id + " returned HTTP " + std::to_string(res->status));
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write '" + path + "'");
    }
    out << res->body;
}

}  // namespace mssa
