def obtain(values, needle):
    result = 0
    for elem in values:
        if elem == needle:
            result = result + 1
    return result
