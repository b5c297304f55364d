"""
Serializers for profile JSON documents
"""
from rest_framework import serializers

from manifold.exceptions import ProfileInvariantError
from manifold.profiles import SPIN_VALUES, ManifoldProfile, Pi1


class ProfileSerializer(serializers.Serializer):
    """Serializer for ManifoldProfile"""
    name = serializers.CharField()
    chi = serializers.IntegerField()
    sigma = serializers.IntegerField()
    b1 = serializers.IntegerField(min_value=0, default=0)
    pi1 = serializers.CharField(default='trivial')
    spin = serializers.ChoiceField(choices=SPIN_VALUES, default='unknown')
    cover_spin = serializers.ChoiceField(choices=SPIN_VALUES, default='unknown')
    flags = serializers.ListField(child=serializers.CharField(), default=list)
    definite_diagonal = serializers.BooleanField(allow_null=True, default=None)

    def validate_pi1(self, value):
        try:
            return Pi1.parse(value)
        except ProfileInvariantError as e:
            raise serializers.ValidationError(str(e))

    def validate(self, data):
        try:
            data['profile'] = ManifoldProfile(**data)
        except ProfileInvariantError as e:
            raise serializers.ValidationError(str(e))
        return data

    def create(self, validated_data):
        return validated_data['profile']

    def to_representation(self, instance):
        return instance.to_json()


class ProfileComparisonSerializer(serializers.Serializer):
    """Serializer for a homeomorphism comparison result"""
    first = serializers.CharField()
    second = serializers.CharField()
    first_class = serializers.CharField()
    second_class = serializers.CharField()
    homeomorphic = serializers.BooleanField()
