#pragma once

namespace rotorwalk {

// GCC/Clang builtin; __extension__ keeps -Wpedantic quiet.
__extension__ using int128 = __int128;
__extension__ using uint128 = unsigned __int128;

}  // namespace rotorwalk
