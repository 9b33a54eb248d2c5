def obtain(entries, target):
    tally = 0
    for entry in entries:
        if entry == target:
            tally = tally + 1
    return tally
