from django.apps import AppConfig


class PaperlibConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'paperlib'
