from toric_tools.fans import fan_from_cyclic_rays, primitive_vectors


def random_complete_fan(rng, n=3, keep=0.3):
    """A random complete plane fan whose rays have height <= n."""
    vs = primitive_vectors(n)
    while True:
        rays = [v for v in vs if rng.random() < keep]
        if len(rays) >= 3 and all(a[0] * b[1] - a[1] * b[0] > 0 for a, b in zip(rays, rays[1:] + rays[:1])):
            return fan_from_cyclic_rays(rays)
