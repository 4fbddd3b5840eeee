#!/usr/bin/env python3
"""A tiny dumb-terminal game speaking the same protocol as a Z-machine interpreter."""
import sys

ROOMS = {
    "porch": ("West of House", "You are standing west of a white house. A path leads north.", {"north": "path"}),
    "path": ("Forest Path", "You are on a forest path. The house lies south.", {"south": "porch"}),
}


def main():
    args = sys.argv[1:]
    style = "pair" if "--pair" in args else "words"
    hang_after = None
    if "--hang-after" in args:
        hang_after = int(args[args.index("--hang-after") + 1])
    if "--fail" in args:
        sys.exit(1)
    room, score, moves, items, leaflet_here = "porch", 0, 0, [], True

    def status():
        if style == "pair":
            return f" {ROOMS[room][0]}                    {score}/{moves}"
        return f" {ROOMS[room][0]}     Score: {score}  Moves: {moves}"

    def emit(body):
        sys.stdout.write(status() + "\n\n" + body + "\n\n> ")
        sys.stdout.flush()

    def look():
        text = ROOMS[room][1]
        if room == "porch" and leaflet_here:
            text += " There is a small leaflet here."
        return text

    emit("FAKE ADVENTURE\nA test game.\n\n" + look())
    for line in sys.stdin:
        cmd = " ".join(line.strip().lower().split())
        if hang_after is not None and moves >= hang_after:
            continue
        if cmd == "quit":
            return
        if cmd in ("inventory", "i"):
            emit("You are carrying:\n  a leaflet" if items else "You are empty-handed.")
            continue
        moves += 1
        if cmd in ("north", "south", "go north", "go south"):
            d = cmd.split()[-1]
            if d in ROOMS[room][2]:
                room = ROOMS[room][2][d]
                emit(look())
            else:
                emit("You can't go that way.")
        elif cmd in ("look", "l"):
            emit(look())
        elif cmd in ("take leaflet", "get leaflet") and room == "porch" and leaflet_here:
            leaflet_here = False
            items.append("leaflet")
            score += 5
            emit("Taken.")
        elif cmd == "jump off cliff":
            emit("You jump.\n\n    *** You have died ***\n\nWould you like to RESTART, RESTORE or QUIT?")
        elif cmd == "win":
            emit("    *** You have won ***")
        else:
            emit("I don't know the word \"" + (cmd.split() or ["?"])[0] + "\".")


if __name__ == "__main__":
    main()
