// Copyright 2026 The DMC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Bundled motion-verb lexicon: base forms and irregular inflections, chosen
// for captions of human motion. Words that mostly act as nouns or directions
// in such captions ("left", "back", "hand") are left out.

#include <array>
#include <string_view>
#include <vector>

#include "dmc/verbs.hpp"

namespace dmc {

namespace {

constexpr std::string_view kMotionVerbs[] = {
    "abduct", "accelerate", "accept", "ache", "act", "adduct", "adjust", "advance", "aim",
    "alternate", "amble", "angle", "applaud", "approach", "arch", "arise", "arisen",
    "arose", "arrange", "ascend", "assemble", "assume", "ate", "attach", "attack", "avoid",
    "awoke", "backpedal", "bake", "balance", "bang", "bask", "bat", "bathe", "batter",
    "beat", "beckon", "beg", "began", "begin", "begun", "bend", "bent", "bicycle", "bit",
    "bite", "bitten", "blend", "blew", "blink", "block", "blow", "blown", "board", "bob",
    "boogie", "bop", "bore", "bought", "bounce", "bow", "bowl", "box", "brace", "brake",
    "break", "breakdance", "breathe", "bring", "broken", "brought", "brush", "buck",
    "build", "built", "bump", "bunt", "burpee", "bury", "button", "calm", "came", "canter",
    "carry", "cartwheel", "carve", "cast", "catch", "caught", "celebrate", "charge",
    "chase", "check", "cheer", "chew", "chill", "chop", "chose", "chosen", "clamber",
    "clap", "clasp", "claw", "clean", "clench", "climb", "climbdown", "cling", "clip",
    "close", "clung", "cluster", "clutch", "coast", "coil", "collapse", "collect", "comb",
    "come", "conduct", "conga", "continue", "cook", "cough", "cover", "cower", "crack",
    "cradle", "cram", "cramp", "crank", "crawl", "creep", "crept", "crisscross", "croon",
    "cross", "crossover", "crouch", "crumple", "crunch", "cuddle", "curl", "curtsy", "cut",
    "cycle", "dab", "dance", "dangle", "dart", "dash", "deadlift", "dealt", "decelerate",
    "defend", "deliver", "demonstrate", "descend", "did", "dig", "dip", "direct",
    "dismount", "distribute", "dive", "dived", "dodge", "done", "dove", "doze", "drag",
    "drank", "drape", "draw", "drawn", "dress", "drew", "dribble", "drift", "drill",
    "drink", "drive", "driven", "drop", "drove", "drum", "duck", "dug", "dunk", "dust",
    "eat", "eaten", "edge", "elbow", "elevate", "embrace", "emerge", "end", "enter",
    "escape", "examine", "exchange", "exercise", "exhale", "exit", "extend", "face", "fall",
    "fallen", "fasten", "fed", "feint", "fell", "felt", "fence", "fetch", "fidget", "fight",
    "fill", "finish", "fish", "fistbump", "fix", "flail", "flap", "flatten", "fled", "flee",
    "flew", "flex", "flick", "flinch", "fling", "flip", "float", "flop", "flounder",
    "flourish", "flow", "flown", "flung", "flutter", "fly", "fold", "follow", "forage",
    "forgot", "forgotten", "fought", "foxtrot", "frolic", "froze", "frozen", "fumble",
    "gallop", "gather", "gave", "gesture", "get", "giggle", "give", "given", "glance",
    "glare", "glide", "go", "gone", "got", "gotten", "grab", "grabbed", "grapple", "grasp",
    "greet", "grew", "grind", "grip", "groove", "grope", "grow", "grown", "guard", "had",
    "hail", "hammer", "handstand", "hang", "headbutt", "heard", "heave", "held", "hid",
    "hidden", "hike", "hit", "hobble", "hoist", "hold", "hoover", "hop", "hover", "hug",
    "hunch", "hung", "hurdle", "hurl", "hurry", "hurt", "hustle", "imitate", "incline",
    "inhale", "inspect", "iron", "jab", "jerk", "jig", "jiggle", "jive", "jog", "join",
    "jolt", "jostle", "judo", "juggle", "jump", "jumpstart", "karate", "kayak", "keep",
    "kept", "kick", "knead", "kneel", "knelt", "knew", "knit", "knock", "known", "laid",
    "lain", "land", "lash", "laugh", "launch", "lead", "lean", "leap", "leaped", "leapfrog",
    "leapt", "led", "let", "lie", "lift", "limbo", "limp", "listen", "lit", "lob", "lock",
    "look", "loop", "loosen", "lost", "lounge", "lower", "lug", "lunge", "lurch", "made",
    "make", "maneuver", "manoeuvre", "march", "massage", "meant", "measure", "meditate",
    "met", "mime", "mix", "moonwalk", "mop", "motion", "mount", "move", "mow", "navigate",
    "nod", "nudge", "nuzzle", "offer", "open", "orbit", "pace", "paddle", "paid", "paint",
    "pan", "pant", "parry", "pass", "pat", "pause", "peck", "pedal", "peek", "peel", "peer",
    "perform", "pet", "pick", "pinch", "pirouette", "pitch", "pivot", "place", "plank",
    "plant", "play", "plod", "plop", "plunge", "pogo", "point", "poke", "polish", "pop",
    "pose", "pounce", "pound", "pour", "pout", "practice", "prance", "pray", "press",
    "pretend", "prod", "propel", "pucker", "pull", "pummel", "pump", "punch", "push",
    "pushup", "put", "quiver", "race", "raise", "rake", "ram", "ran", "rang", "rappel",
    "rattle", "reach", "realign", "rebound", "recline", "recoil", "recover", "relax",
    "release", "repeat", "rest", "retreat", "return", "reverse", "ridden", "ride", "rinse",
    "ripple", "rise", "risen", "roam", "rock", "rode", "roll", "rotate", "roundhouse",
    "row", "rub", "rumba", "run", "rung", "rush", "said", "salsa", "salute", "sang", "sank",
    "sashay", "sat", "saunter", "scale", "scamper", "scan", "scissor", "scoop", "scoot",
    "scramble", "scrape", "scratch", "scrub", "scuffle", "scurry", "scuttle", "search",
    "seat", "seen", "sent", "serve", "settle", "sew", "shadow", "shadowbox", "shake",
    "shaken", "shamble", "shield", "shift", "shimmy", "shiver", "shone", "shoo", "shook",
    "shoot", "shot", "shove", "shovel", "showed", "shown", "shrank", "shrink", "shrug",
    "shuffle", "shut", "sidestep", "sidle", "sift", "signal", "sink", "sip", "sit", "skate",
    "skateboard", "ski", "skid", "skip", "skulk", "skydive", "slain", "slam", "slap",
    "slash", "sled", "sleep", "slept", "slid", "slide", "sling", "slink", "slip", "slither",
    "slog", "slouch", "slump", "slung", "smack", "smash", "smell", "smelt", "smile",
    "smooth", "snap", "snatch", "sneak", "sneeze", "sniff", "snowboard", "snuggle", "soar",
    "sob", "sold", "somersault", "sought", "spar", "spat", "spear", "sped", "spent",
    "spike", "spin", "spiral", "splash", "splay", "split", "spoken", "sprang", "sprawl",
    "spread", "spring", "sprinkle", "sprint", "sprung", "spun", "squash", "squat",
    "squeeze", "squirm", "stab", "stack", "stagger", "stalk", "stamp", "stand", "start",
    "startle", "steady", "steer", "step", "stick", "stiffen", "sting", "stir", "stoke",
    "stole", "stolen", "stomp", "stood", "stoop", "stop", "straddle", "straighten",
    "strain", "stretch", "stridden", "stride", "strike", "string", "striven", "strode",
    "stroll", "struck", "struggle", "strum", "strung", "strut", "stuck", "stumble", "stung",
    "summon", "sung", "sunk", "surf", "swagger", "swam", "swap", "swat", "sway", "swear",
    "sweep", "swept", "swerve", "swim", "swing", "swipe", "swirl", "swivel", "swoop",
    "swore", "sworn", "swum", "swung", "tackle", "tag", "take", "taken", "tango", "tap",
    "taught", "teach", "tear", "tease", "teeter", "tense", "tether", "think", "thought",
    "thread", "threw", "throttle", "throw", "thrown", "thrust", "thump", "tickle", "tie",
    "tilt", "tip", "tiptoe", "told", "took", "topple", "tore", "torn", "toss", "totter",
    "touch", "tow", "trace", "trail", "tread", "tremble", "trip", "trod", "trodden", "trot",
    "trundle", "try", "tuck", "tug", "tumble", "turn", "twerk", "twirl", "twist", "twitch",
    "unbend", "unclench", "uncross", "understood", "unfold", "unlock", "unpack", "unscrew",
    "untie", "unwind", "unzip", "use", "vacuum", "vault", "veer", "volley", "waddle",
    "wade", "wag", "wait", "wake", "walk", "waltz", "wander", "ward", "warm", "wash",
    "watch", "wave", "wear", "weave", "went", "wheel", "whip", "whirl", "whisk", "whistle",
    "whittle", "wiggle", "wind", "wink", "wipe", "wobble", "woke", "woken", "won", "wore",
    "worn", "wove", "woven", "wrap", "wrestle", "wriggle", "wring", "write", "written",
    "wrote", "wrung", "yank", "yawn", "yell", "yodel", "yoyo", "zigzag", "zip",
};

}  // namespace

std::vector<std::string_view> DefaultMotionVerbs() {
  return {std::begin(kMotionVerbs), std::end(kMotionVerbs)};
}

}  // namespace dmc
