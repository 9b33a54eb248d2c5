def obtain(items, wanted):
    result = 0
    for elem in items:
        if elem == wanted:
            result = result + 1
    return result
